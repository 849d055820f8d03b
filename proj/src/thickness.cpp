#include "thickwalk/thickness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "thickwalk/kernels.hpp"

namespace thickwalk {

namespace {

constexpr double kParallelEps = 1e-12;
constexpr double kProbeStep = 1e-6;   // arclength step of the one-sided tests
constexpr double kProbeTol = 1e-12;   // decrease below this counts as descent

struct ClosestPair {
    double s = 0.0;     // parameter on first segment
    double t = 0.0;     // parameter on second segment
    double dist_sq = 0.0;
};

// Closest points between segments p0+s*u and q0+t*v, s,t in [0,1].
// For (anti)parallel pairs with a flat valley of minima the witness is the
// midpoint of the overlap interval, so callers get an interior witness.
ClosestPair closest_segment_pair(const Vec3& p0, const Vec3& u,
                                 const Vec3& q0, const Vec3& v) {
    const Vec3 w = p0 - q0;
    const double a = u.dot(u);
    const double b = u.dot(v);
    const double c = v.dot(v);
    const double d = u.dot(w);
    const double e = v.dot(w);
    const double denom = a * c - b * b;

    double s;
    bool parallel = denom <= kParallelEps * a * c;
    if (parallel) {
        // t(s) = (b s + e) / c stays in [0,1] for s in the overlap window
        double s_lo = 0.0, s_hi = 1.0;
        if (b > 0.0) {
            s_lo = std::max(0.0, -e / b);
            s_hi = std::min(1.0, (c - e) / b);
        } else if (b < 0.0) {
            s_lo = std::max(0.0, (c - e) / b);
            s_hi = std::min(1.0, -e / b);
        } else {
            s_lo = s_hi = 0.0;
        }
        if (s_lo <= s_hi) {
            s = 0.5 * (s_lo + s_hi);
        } else {
            s = 0.0; // disjoint projections: endpoint logic below resolves
        }
    } else {
        s = std::clamp((b * e - c * d) / denom, 0.0, 1.0);
    }

    double t = (b * s + e) / c;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-d / a, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - d) / a, 0.0, 1.0);
    }

    const Vec3 diff = (p0 + u * s) - (q0 + v * t);
    return {s, t, diff.norm_sq()};
}

Vec3 chain_point(const Walk& w, std::size_t seg, double t) {
    return w.vertex(seg) + (w.vertex(seg + 1) - w.vertex(seg)) * t;
}

// Turning-point test of the distance-to-`other` function along the chain at
// (seg, t): the one-sided differences at +-kProbeStep must not show the
// function strictly passing through (decreasing on one side, increasing on
// the other). Local minima and interior local maxima both qualify; at a
// chain end the single inward difference must not decrease (a boundary
// minimum counts, a boundary maximum does not).
bool chain_turning_point(const Walk& w, std::size_t seg, double t, const Vec3& other) {
    const double n = static_cast<double>(w.edge_count());
    const double g0 = static_cast<double>(seg) + t;
    const double d0 = (chain_point(w, seg, t) - other).norm();
    bool have[2] = {false, false};
    bool dec[2] = {false, false};
    bool inc[2] = {false, false};
    for (int k = 0; k < 2; ++k) {
        const double g = g0 + (k == 0 ? kProbeStep : -kProbeStep);
        if (g < 0.0 || g > n) continue;
        double base = std::floor(g);
        if (base >= n) base = n - 1.0;
        const auto seg2 = static_cast<std::size_t>(base);
        const double d1 = (chain_point(w, seg2, g - base) - other).norm();
        have[k] = true;
        dec[k] = d1 < d0 - kProbeTol;
        inc[k] = d1 > d0 + kProbeTol;
    }
    if (have[0] && have[1]) {
        // strictly monotone through the point: not a turning point
        return !((dec[0] && inc[1]) || (inc[0] && dec[1]));
    }
    // chain end: one-sided; a decrease moving inward means no extremum here
    if (have[0]) return !dec[0];
    if (have[1]) return !dec[1];
    return true;
}

bool doubly_critical(const Walk& w, std::size_t h, double s, std::size_t j, double t) {
    const Vec3 x = chain_point(w, h, s);
    const Vec3 y = chain_point(w, j, t);
    return chain_turning_point(w, h, s, y) && chain_turning_point(w, j, t, x);
}

struct PairCandidate {
    double dist_sq;
    std::uint32_t h, j;
    double s, t;
};

// All point pairs on segments (h, j) that can be doubly critical: the
// closest approach (interior-interior minima), the four vertex-vertex
// combinations and the vertex-to-foot projections (a maximum-type witness
// of a piecewise-linear chain is always a vertex). Near-duplicates are
// emitted once.
template <typename Fn>
void for_each_candidate_pair(const Vec3& p0, const Vec3& u, const Vec3& q0, const Vec3& v,
                             Fn&& emit) {
    double seen_s[9], seen_t[9];
    int nseen = 0;
    auto push = [&](double s, double t) {
        for (int k = 0; k < nseen; ++k)
            if (std::abs(seen_s[k] - s) < 1e-12 && std::abs(seen_t[k] - t) < 1e-12) return;
        seen_s[nseen] = s;
        seen_t[nseen] = t;
        ++nseen;
        const Vec3 diff = (p0 + u * s) - (q0 + v * t);
        emit(s, t, diff.norm_sq());
    };
    const ClosestPair cp = closest_segment_pair(p0, u, q0, v);
    push(cp.s, cp.t);
    for (double s : {0.0, 1.0})
        for (double t : {0.0, 1.0})
            push(s, t);
    const double uu = u.dot(u), vv = v.dot(v);
    for (double s : {0.0, 1.0}) { // endpoint of first vs foot on second
        const Vec3 x = p0 + u * s;
        push(s, std::clamp((x - q0).dot(v) / vv, 0.0, 1.0));
    }
    for (double t : {0.0, 1.0}) { // endpoint of second vs foot on first
        const Vec3 y = q0 + v * t;
        push(std::clamp((y - p0).dot(u) / uu, 0.0, 1.0), t);
    }
}

void sort_candidates(std::vector<PairCandidate>& cands) {
    std::sort(cands.begin(), cands.end(), [](const PairCandidate& a, const PairCandidate& b) {
        if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
        if (a.h != b.h) return a.h < b.h;
        return a.j < b.j;
    });
}

} // namespace

ThicknessParams ThicknessParams::from_radius(double r) {
    if (!(r >= 0.0))
        throw std::invalid_argument("tube radius must be nonnegative");
    ThicknessParams p;
    p.r = r;
    p.theta_min = 2.0 * std::atan(2.0 * r);
    p.cos_theta_min = std::cos(p.theta_min);
    return p;
}

std::string to_diagnostic_line(const DcsdResult& r) {
    if (!r.finite() || !r.witness) return "none";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu %.17g %zu %.17g %.17g",
                  r.witness->first.segment, r.witness->first.t,
                  r.witness->second.segment, r.witness->second.t, r.distance);
    return buf;
}

double min_bend_angle(const Walk& walk) {
    const std::size_t nseg = walk.edge_count();
    std::vector<double> ex(nseg), ey(nseg), ez(nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
        const Vec3 e = walk.edge(i).normalized();
        ex[i] = e.x; ey[i] = e.y; ez[i] = e.z;
    }
    const double m = kernels::min_consecutive_dot(ex.data(), ey.data(), ez.data(), nseg);
    return std::acos(std::clamp(-m, -1.0, 1.0));
}

std::optional<double> segment_pair_critical_distance(const Walk& walk,
                                                     std::size_t h, std::size_t j) {
    const std::size_t nseg = walk.edge_count();
    if (h >= j) throw std::invalid_argument("segment pair must satisfy h < j");
    if (j >= nseg) throw std::invalid_argument("segment index out of range");
    if (j < h + 2) throw std::invalid_argument("adjacent segments are excluded from dcsd");
    const ClosestPair cp = closest_segment_pair(walk.vertex(h), walk.edge(h),
                                                walk.vertex(j), walk.edge(j));
    if (!doubly_critical(walk, h, cp.s, j, cp.t)) return std::nullopt;
    return std::sqrt(cp.dist_sq);
}

DcsdResult dcsd(const Walk& walk) {
    const std::size_t nseg = walk.edge_count();
    DcsdResult out;
    if (nseg < 3) return out;
    std::vector<PairCandidate> cands;
    cands.reserve(nseg * (nseg - 1) * 3);
    for (std::size_t h = 0; h + 2 < nseg; ++h) {
        for (std::size_t j = h + 2; j < nseg; ++j) {
            for_each_candidate_pair(walk.vertex(h), walk.edge(h),
                                    walk.vertex(j), walk.edge(j),
                                    [&](double s, double t, double d2) {
                                        cands.push_back({d2, static_cast<std::uint32_t>(h),
                                                         static_cast<std::uint32_t>(j), s, t});
                                    });
        }
    }
    sort_candidates(cands);
    for (const auto& c : cands) {
        if (doubly_critical(walk, c.h, c.s, c.j, c.t)) {
            out.distance = std::sqrt(c.dist_sq);
            out.witness = {{SegmentWitness{c.h, c.s}, SegmentWitness{c.j, c.t}}};
            return out;
        }
    }
    return out;
}

DcsdResult dcsd_accelerated(const Walk& walk, double cutoff) {
    TubeChecker checker;
    return checker.dcsd_accelerated(walk, cutoff);
}

bool accommodates_tube(const Walk& walk, const ThicknessParams& params) {
    TubeChecker checker;
    return checker.accommodates(walk, params);
}

// ---------------------------------------------------------------------------
// TubeChecker
// ---------------------------------------------------------------------------

namespace {

inline std::int64_t cell_coord(double x, double inv_cell) {
    return static_cast<std::int64_t>(std::floor(x * inv_cell));
}

// large primes, folded into a power-of-two table
inline std::uint64_t cell_hash(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
    return static_cast<std::uint64_t>(ix * 73856093LL) ^
           static_cast<std::uint64_t>(iy * 19349663LL) ^
           static_cast<std::uint64_t>(iz * 83492791LL);
}

} // namespace

TubeChecker::TubeChecker() = default;

void TubeChecker::load_segments(const Walk& walk) {
    const auto& v = walk.vertices();
    nseg_ = v.size() - 1;
    sx_.resize(nseg_); sy_.resize(nseg_); sz_.resize(nseg_);
    ex_.resize(nseg_); ey_.resize(nseg_); ez_.resize(nseg_);
    mx_.resize(nseg_); my_.resize(nseg_); mz_.resize(nseg_);
    for (std::size_t i = 0; i < nseg_; ++i) {
        const Vec3& a = v[i];
        const Vec3 e = v[i + 1] - v[i];
        sx_[i] = a.x; sy_[i] = a.y; sz_[i] = a.z;
        ex_[i] = e.x; ey_[i] = e.y; ez_[i] = e.z;
        mx_[i] = a.x + 0.5 * e.x;
        my_[i] = a.y + 0.5 * e.y;
        mz_[i] = a.z + 0.5 * e.z;
    }
}

void TubeChecker::build_grid(double cell) {
    const double inv_cell = 1.0 / cell;
    const std::uint64_t buckets = std::bit_ceil(std::max<std::uint64_t>(16, 4 * nseg_));
    table_mask_ = buckets - 1;
    heads_.assign(buckets, -1);
    next_.clear();
    entry_seg_.clear();
    for (std::size_t i = 0; i < nseg_; ++i) {
        const std::int64_t x0 = cell_coord(std::min(sx_[i], sx_[i] + ex_[i]), inv_cell);
        const std::int64_t x1 = cell_coord(std::max(sx_[i], sx_[i] + ex_[i]), inv_cell);
        const std::int64_t y0 = cell_coord(std::min(sy_[i], sy_[i] + ey_[i]), inv_cell);
        const std::int64_t y1 = cell_coord(std::max(sy_[i], sy_[i] + ey_[i]), inv_cell);
        const std::int64_t z0 = cell_coord(std::min(sz_[i], sz_[i] + ez_[i]), inv_cell);
        const std::int64_t z1 = cell_coord(std::max(sz_[i], sz_[i] + ez_[i]), inv_cell);
        for (std::int64_t ix = x0; ix <= x1; ++ix)
            for (std::int64_t iy = y0; iy <= y1; ++iy)
                for (std::int64_t iz = z0; iz <= z1; ++iz) {
                    const std::uint64_t b = cell_hash(ix, iy, iz) & table_mask_;
                    entry_seg_.push_back(static_cast<std::int32_t>(i));
                    next_.push_back(heads_[b]);
                    heads_[b] = static_cast<std::int32_t>(entry_seg_.size()) - 1;
                }
    }
    if (stamp_.size() < nseg_) {
        stamp_.assign(nseg_, -1);
        stamp_value_ = 0;
    }
}

DcsdResult TubeChecker::scan(const Walk& walk, double cutoff, bool* early_violation,
                             const ThicknessParams* /*params*/) {
    DcsdResult out;
    if (nseg_ < 3) return out;

    const double cell = std::max(1.0, cutoff);
    const double inv_cell = 1.0 / cell;
    build_grid(cell);

    // segment distance <= cutoff implies midpoint distance <= cutoff + 1
    const double pre_thresh_sq = (cutoff + 1.0) * (cutoff + 1.0);
    const double cutoff_sq = cutoff * cutoff;

    std::vector<PairCandidate> hits;
    for (std::size_t h = 0; h < nseg_; ++h) {
        ++stamp_value_;
        cand_.clear();
        const double lox = std::min(sx_[h], sx_[h] + ex_[h]) - cutoff;
        const double hix = std::max(sx_[h], sx_[h] + ex_[h]) + cutoff;
        const double loy = std::min(sy_[h], sy_[h] + ey_[h]) - cutoff;
        const double hiy = std::max(sy_[h], sy_[h] + ey_[h]) + cutoff;
        const double loz = std::min(sz_[h], sz_[h] + ez_[h]) - cutoff;
        const double hiz = std::max(sz_[h], sz_[h] + ez_[h]) + cutoff;
        for (std::int64_t ix = cell_coord(lox, inv_cell); ix <= cell_coord(hix, inv_cell); ++ix)
            for (std::int64_t iy = cell_coord(loy, inv_cell); iy <= cell_coord(hiy, inv_cell); ++iy)
                for (std::int64_t iz = cell_coord(loz, inv_cell); iz <= cell_coord(hiz, inv_cell); ++iz) {
                    const std::uint64_t b = cell_hash(ix, iy, iz) & table_mask_;
                    for (std::int32_t e = heads_[b]; e != -1; e = next_[e]) {
                        const std::int32_t j = entry_seg_[e];
                        if (j < static_cast<std::int64_t>(h) + 2) continue;
                        if (stamp_[j] == stamp_value_) continue;
                        stamp_[j] = stamp_value_;
                        cand_.push_back(j);
                    }
                }
        if (cand_.empty()) continue;
        // candidate order must not depend on hash layout
        std::sort(cand_.begin(), cand_.end());

        kept_.resize(cand_.size());
        const std::size_t nkept = kernels::select_within(
            mx_[h], my_[h], mz_[h], mx_.data(), my_.data(), mz_.data(),
            cand_.data(), cand_.size(), pre_thresh_sq, kept_.data());

        const Vec3 p0{sx_[h], sy_[h], sz_[h]};
        const Vec3 u{ex_[h], ey_[h], ez_[h]};
        for (std::size_t k = 0; k < nkept; ++k) {
            const std::int32_t j = kept_[k];
            const Vec3 q0{sx_[j], sy_[j], sz_[j]};
            const Vec3 v{ex_[j], ey_[j], ez_[j]};
            bool violated = false;
            for_each_candidate_pair(p0, u, q0, v, [&](double s, double t, double d2) {
                if (d2 > cutoff_sq || violated) return;
                if (early_violation) {
                    if (doubly_critical(walk, h, s, static_cast<std::size_t>(j), t)) {
                        violated = true;
                        out.distance = std::sqrt(d2);
                        out.witness = {{SegmentWitness{h, s},
                                        SegmentWitness{static_cast<std::size_t>(j), t}}};
                    }
                } else {
                    hits.push_back({d2, static_cast<std::uint32_t>(h),
                                    static_cast<std::uint32_t>(j), s, t});
                }
            });
            if (violated) {
                *early_violation = true;
                return out;
            }
        }
    }
    if (early_violation) return out; // no violating pair found

    sort_candidates(hits);
    for (const auto& c : hits) {
        if (doubly_critical(walk, c.h, c.s, c.j, c.t)) {
            out.distance = std::sqrt(c.dist_sq);
            out.witness = {{SegmentWitness{c.h, c.s}, SegmentWitness{c.j, c.t}}};
            return out;
        }
    }
    return out;
}

DcsdResult TubeChecker::dcsd_accelerated(const Walk& walk, double cutoff) {
    if (cutoff < 0.0) throw std::invalid_argument("cutoff must be nonnegative");
    load_segments(walk);
    return scan(walk, cutoff, nullptr, nullptr);
}

bool TubeChecker::accommodates(const Walk& walk, const ThicknessParams& params) {
    load_segments(walk);
    // short range: every bend angle >= theta_min, tested in the dot domain
    // (edges are unit to walk tolerance, so no per-edge normalization here)
    const double min_dot = kernels::min_consecutive_dot(ex_.data(), ey_.data(), ez_.data(), nseg_);
    if (min_dot < -params.cos_theta_min) return false;
    // long range: no doubly-critical pair at distance <= 2r
    bool violated = false;
    scan(walk, 2.0 * params.r, &violated, &params);
    return !violated;
}

} // namespace thickwalk
