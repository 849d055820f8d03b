#include "thickwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace thickwalk {

double squared_radius_of_gyration(const Walk& walk) {
    const auto& v = walk.vertices();
    Vec3 centroid{0.0, 0.0, 0.0};
    for (const auto& p : v) centroid += p;
    centroid = centroid / static_cast<double>(v.size());
    double acc = 0.0;
    for (const auto& p : v) acc += (p - centroid).norm_sq();
    return acc / static_cast<double>(v.size());
}

double squared_end_to_end(const Walk& walk) {
    return (walk.vertices().back() - walk.vertices().front()).norm_sq();
}

SeriesSummary summarize(const std::vector<double>& values) {
    SeriesSummary s;
    s.count = values.size();
    if (s.count == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stderr_mean = std::sqrt(ss / static_cast<double>(s.count - 1)) /
                        std::sqrt(static_cast<double>(s.count));
    }
    return s;
}

PowerLawFit fit_power_law(std::vector<std::pair<double, double>> points) {
    if (points.size() < 3) throw std::domain_error("power-law fit needs >= 3 points");
    for (const auto& [x, y] : points)
        if (!(x > 0.0) || !(y > 0.0))
            throw std::domain_error("power-law fit needs positive inputs");
    // canonical order so permuted inputs accumulate identically
    std::sort(points.begin(), points.end());

    const double m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    if (sxx == 0.0) throw std::domain_error("power-law fit needs distinct abscissae");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double ssr = 0.0, sst = 0.0;
    for (const auto& [x, y] : points) {
        const double ly = std::log(y);
        const double pred = fit.log_prefactor + fit.exponent * std::log(x);
        ssr += (ly - pred) * (ly - pred);
        sst += (ly - my) * (ly - my);
    }
    fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    if (points.size() > 2)
        fit.exponent_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
    return fit;
}

std::vector<AcceptanceScaling> acceptance_scaling(
    const std::vector<std::tuple<std::size_t, double, double>>& table) {
    std::vector<double> radii;
    for (const auto& [n, r, rate] : table)
        if (std::find(radii.begin(), radii.end(), r) == radii.end()) radii.push_back(r);
    std::sort(radii.begin(), radii.end());

    std::vector<AcceptanceScaling> out;
    for (double r : radii) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [n, rr, rate] : table)
            if (rr == r) pts.emplace_back(static_cast<double>(n), rate);
        if (pts.size() < 3) throw std::domain_error("acceptance scaling needs >= 3 lengths per radius");
        out.push_back({r, fit_power_law(std::move(pts))});
    }
    return out;
}

double autocorrelation(const std::vector<double>& series, std::size_t lag) {
    const std::size_t n = series.size();
    if (lag >= n) throw std::invalid_argument("autocorrelation lag must be < count");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    if (var == 0.0) return std::numeric_limits<double>::quiet_NaN();
    double cov = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
        cov += (series[i] - mean) * (series[i + lag] - mean);
    return cov / var;
}

} // namespace thickwalk
