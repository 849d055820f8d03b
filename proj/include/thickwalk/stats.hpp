// stats.hpp — ensemble observables and power-law fits.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "thickwalk/walk.hpp"

namespace thickwalk {

/// (1/(n+1)) sum |v_i - centroid|^2.
double squared_radius_of_gyration(const Walk& walk);

/// |v_n - v_0|^2 (= |v_n|^2 for origin-rooted walks).
double squared_end_to_end(const Walk& walk);

struct SeriesSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double stderr_mean = 0.0; // sample standard deviation / sqrt(count)
};

SeriesSummary summarize(const std::vector<double>& values);

struct PowerLawFit {
    double exponent = 0.0;       // slope of log y on log N
    double log_prefactor = 0.0;  // intercept
    double exponent_stderr = 0.0;
    double r_squared = 1.0;
};

/// Ordinary least squares of log y on log N (vertical offsets only).
/// Input order does not affect the result (points are canonicalized
/// before accumulation). Requires >= 3 points, all positive; throws
/// std::domain_error otherwise.
PowerLawFit fit_power_law(std::vector<std::pair<double, double>> points);

/// Per radius: fit of acceptance rate vs N. Rows of `table` are
/// (n, r, rate_percent); radii are matched exactly.
struct AcceptanceScaling {
    double r = 0.0;
    PowerLawFit fit;
};
std::vector<AcceptanceScaling> acceptance_scaling(
    const std::vector<std::tuple<std::size_t, double, double>>& table);

/// Normalized sample autocorrelation at the given lag; NaN for a
/// zero-variance series (documented sentinel). Requires lag < count.
double autocorrelation(const std::vector<double>& series, std::size_t lag);

} // namespace thickwalk
