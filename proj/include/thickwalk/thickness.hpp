// thickness.hpp — tube accommodation: minimum bend angle (short range)
// and doubly-critical self distance (long range).
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "thickwalk/walk.hpp"

namespace thickwalk {

/// Tube radius r and the derived short-range angle threshold 2*atan(2r).
struct ThicknessParams {
    double r = 0.0;
    double theta_min = 0.0;      // 2*atan(2r), radians
    double cos_theta_min = 1.0;  // cos(theta_min), cached for dot-domain tests

    static ThicknessParams from_radius(double r);
};

/// One point of a doubly-critical pair: segment index (0-based, segment i
/// spans v_i -> v_{i+1}) and parameter in [0,1] along it.
struct SegmentWitness {
    std::size_t segment = 0;
    double t = 0.0;
};

struct DcsdResult {
    double distance = std::numeric_limits<double>::infinity();
    std::optional<std::pair<SegmentWitness, SegmentWitness>> witness;

    bool finite() const { return distance != std::numeric_limits<double>::infinity(); }
};

/// "h t_h j t_j distance" diagnostic line for a finite result.
std::string to_diagnostic_line(const DcsdResult& r);

/// Minimum over interior vertices of bend_angle(walk, i).
double min_bend_angle(const Walk& walk);

/// Closest-point pair between non-adjacent segments h < j (j >= h+2),
/// returned iff that pair is doubly critical in the chain context: traced
/// along the polyline, the distance from each witness to the other point
/// does not decrease in any available direction (one-sided checks step
/// into the neighboring edge where one exists). Returns nullopt otherwise.
/// Throws std::invalid_argument for adjacent or out-of-range segments.
std::optional<double> segment_pair_critical_distance(const Walk& walk,
                                                     std::size_t h, std::size_t j);

/// Naive O(n^2) reference: minimum over all non-adjacent pairs of the
/// critical distance; +infinity when no doubly-critical pair exists.
DcsdResult dcsd(const Walk& walk);

/// Grid-accelerated variant: identical accept/reject decision for the
/// predicate "distance > cutoff"; exact value (with witness) whenever the
/// true dcsd <= cutoff, may report +infinity when it exceeds cutoff.
DcsdResult dcsd_accelerated(const Walk& walk, double cutoff);

/// Definition-3 predicate: dcsd(walk) > 2r (strict) and every bend angle
/// >= 2*atan(2r) (inclusive). For r = 0 this accepts every walk without
/// exact self-intersections.
bool accommodates_tube(const Walk& walk, const ThicknessParams& params);

/// Reusable checker owning the SoA scratch, spatial hash grid and
/// candidate buffers; what the sampler drives in its hot loop. The
/// free functions above wrap a fresh instance per call.
class TubeChecker {
public:
    TubeChecker();

    bool accommodates(const Walk& walk, const ThicknessParams& params);
    DcsdResult dcsd_accelerated(const Walk& walk, double cutoff);

private:
    void load_segments(const Walk& walk);
    void build_grid(double cell);
    // Narrow phase over candidate pairs within cutoff. With early_violation
    // set, returns on the first doubly-critical pair found (predicate mode);
    // otherwise returns the smallest critical pair or +inf.
    DcsdResult scan(const Walk& walk, double cutoff, bool* early_violation,
                    const ThicknessParams* params);

    // segment SoA
    std::vector<double> sx_, sy_, sz_;  // starts
    std::vector<double> ex_, ey_, ez_;  // edge vectors
    std::vector<double> mx_, my_, mz_;  // midpoints
    std::size_t nseg_ = 0;

    // spatial hash (bucket heads + per-entry chaining)
    std::vector<std::int32_t> heads_;
    std::vector<std::int32_t> next_;
    std::vector<std::int32_t> entry_seg_;
    std::vector<std::int64_t> entry_cell_;
    std::uint64_t table_mask_ = 0;

    // per-query scratch
    std::vector<std::int32_t> stamp_;
    std::vector<std::int32_t> cand_, kept_;
    std::vector<double> dist_sq_;
    std::int32_t stamp_value_ = 0;
};

} // namespace thickwalk
