#include "thickwalk/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace thickwalk {

ChainConfig ChainConfig::with_defaults(std::size_t n, double r, std::uint64_t seed,
                                       std::uint64_t samples) {
    ChainConfig c;
    c.n = n;
    c.r = r;
    c.seed = seed;
    c.samples = samples;
    c.burn_in = 10 * static_cast<std::uint64_t>(n);
    c.stride = static_cast<std::uint64_t>(n);
    return c;
}

void ChainConfig::validate() const {
    if (n < 2) throw std::invalid_argument("chain needs n >= 2");
    if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(move_mix >= 0.0 && move_mix <= 1.0))
        throw std::invalid_argument("move_mix must lie in [0,1]");
    if (max_plane_retries < 1) throw std::invalid_argument("max_plane_retries must be >= 1");
}

Walk straight_walk(std::size_t n) {
    if (n < 2) throw std::invalid_argument("straight walk needs n >= 2");
    std::vector<Vec3> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = Vec3{static_cast<double>(i), 0.0, 0.0};
    return Walk::unchecked(std::move(v));
}

std::optional<Plane> propose_allowable_plane(const Walk& walk, std::size_t i,
                                             const ThicknessParams& params, Rng& rng,
                                             int max_retries) {
    const std::size_t n = walk.edge_count();
    if (i < 1 || i > n - 1) throw std::invalid_argument("reflection vertex out of range");
    const Vec3 a = (walk.vertex(i - 1) - walk.vertex(i)).normalized();
    const Vec3 b = (walk.vertex(i + 1) - walk.vertex(i)).normalized();
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const Vec3 u = rng.unit_vector();
        const Vec3 b_ref = b - u * (2.0 * b.dot(u));
        // bend angle after reflecting the tail: acos(a · b_ref) >= theta_min
        if (a.dot(b_ref) <= params.cos_theta_min)
            return Plane{walk.vertex(i), u};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// ReflectionSampler
// ---------------------------------------------------------------------------

ReflectionSampler::ReflectionSampler(const ChainConfig& cfg)
    : cfg_(cfg),
      params_(ThicknessParams::from_radius(cfg.r)),
      walk_(straight_walk(cfg.n)),
      rng_(cfg.seed) {
    cfg_.validate();
}

bool ReflectionSampler::apply_and_check(std::size_t first_changed) {
    if (checker_.accommodates(walk_, params_)) {
        ++stats_.accepted;
        if (++accepted_since_renorm_ >= kRenormInterval) renormalize();
        return true;
    }
    auto& v = walk_.mutable_vertices();
    std::copy(saved_tail_.begin(), saved_tail_.end(), v.begin() + static_cast<std::ptrdiff_t>(first_changed));
    return false;
}

bool ReflectionSampler::step_single() {
    const std::size_t n = cfg_.n;
    const std::size_t i = 1 + static_cast<std::size_t>(rng_.uniform_below(n - 1));
    ++stats_.proposed;
    const auto plane = propose_allowable_plane(walk_, i, params_, rng_, cfg_.max_plane_retries);
    if (!plane) {
        ++stats_.plane_exhausted;
        return false;
    }
    auto& v = walk_.mutable_vertices();
    saved_tail_.assign(v.begin() + static_cast<std::ptrdiff_t>(i + 1), v.end());
    reflect_tail_inplace(v, i, *plane);
    return apply_and_check(i + 1);
}

bool ReflectionSampler::step_double() {
    const std::size_t n = cfg_.n;
    ++stats_.proposed;
    // uniform over distinct pairs 1 <= i < j <= n-1
    std::size_t i = 1 + static_cast<std::size_t>(rng_.uniform_below(n - 1));
    std::size_t j = 1 + static_cast<std::size_t>(rng_.uniform_below(n - 2));
    if (j >= i) ++j;
    if (j < i) std::swap(i, j);

    const auto plane_i = propose_allowable_plane(walk_, i, params_, rng_, cfg_.max_plane_retries);
    if (!plane_i) {
        ++stats_.plane_exhausted;
        return false;
    }
    auto& v = walk_.mutable_vertices();
    saved_tail_.assign(v.begin() + static_cast<std::ptrdiff_t>(i + 1), v.end());
    reflect_tail_inplace(v, i, *plane_i);

    // second plane drawn against the once-reflected geometry
    const auto plane_j = propose_allowable_plane(walk_, j, params_, rng_, cfg_.max_plane_retries);
    if (!plane_j) {
        ++stats_.plane_exhausted;
        std::copy(saved_tail_.begin(), saved_tail_.end(), v.begin() + static_cast<std::ptrdiff_t>(i + 1));
        return false;
    }
    reflect_tail_inplace(v, j, *plane_j);
    return apply_and_check(i + 1);
}

bool ReflectionSampler::step() {
    if (cfg_.n == 2) return step_single(); // no distinct pair exists
    const bool single = rng_.uniform01() < cfg_.move_mix;
    return single ? step_single() : step_double();
}

void ReflectionSampler::renormalize() {
    auto& v = walk_.mutable_vertices();
    Vec3 pos{0.0, 0.0, 0.0};
    Vec3 prev = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        const Vec3 e = (v[i] - prev).normalized();
        prev = v[i];
        pos += e;
        v[i] = pos;
    }
    v[0] = Vec3{0.0, 0.0, 0.0};
    ++stats_.renormalizations;
    accepted_since_renorm_ = 0;
}

// ---------------------------------------------------------------------------

namespace {

// Shared by the free single/double step functions: copy-in, run one
// proposal of the requested kind, copy-out.
std::pair<Walk, bool> one_shot(const Walk& walk, const ThicknessParams& params, Rng& rng,
                               int max_plane_retries, bool want_double) {
    const std::size_t n = walk.edge_count();
    if (want_double && n < 3)
        throw std::invalid_argument("double reflection needs n >= 3");

    TubeChecker checker;
    std::vector<Vec3> v = walk.vertices();

    std::size_t i = 1 + static_cast<std::size_t>(rng.uniform_below(n - 1));
    std::size_t j = 0;
    if (want_double) {
        j = 1 + static_cast<std::size_t>(rng.uniform_below(n - 2));
        if (j >= i) ++j;
        if (j < i) std::swap(i, j);
    }
    Walk work = Walk::unchecked(std::move(v));
    const auto plane_i = propose_allowable_plane(work, i, params, rng, max_plane_retries);
    if (!plane_i) return {walk, false};
    reflect_tail_inplace(work.mutable_vertices(), i, *plane_i);
    if (want_double) {
        const auto plane_j = propose_allowable_plane(work, j, params, rng, max_plane_retries);
        if (!plane_j) return {walk, false};
        reflect_tail_inplace(work.mutable_vertices(), j, *plane_j);
    }
    if (checker.accommodates(work, params)) return {std::move(work), true};
    return {walk, false};
}

} // namespace

std::pair<Walk, bool> single_reflection_step(const Walk& walk, const ThicknessParams& params,
                                             Rng& rng, int max_plane_retries) {
    return one_shot(walk, params, rng, max_plane_retries, false);
}

std::pair<Walk, bool> double_reflection_step(const Walk& walk, const ThicknessParams& params,
                                             Rng& rng, int max_plane_retries) {
    return one_shot(walk, params, rng, max_plane_retries, true);
}

ChainStats run_chain(const ChainConfig& cfg,
                     const std::function<void(const Walk&, std::uint64_t)>& sink) {
    cfg.validate();
    ReflectionSampler sampler(cfg);
    std::uint64_t accepted = 0;
    std::uint64_t emitted = 0;
    while (emitted < cfg.samples) {
        if (!sampler.step()) continue;
        ++accepted;
        if (accepted > cfg.burn_in && (accepted - cfg.burn_in) % cfg.stride == 0) {
            sink(sampler.current(), emitted);
            ++emitted;
        }
    }
    return sampler.stats();
}

std::pair<std::vector<Walk>, ChainStats> run_chain_collect(const ChainConfig& cfg) {
    std::vector<Walk> samples;
    samples.reserve(cfg.samples);
    ChainStats stats = run_chain(cfg, [&](const Walk& w, std::uint64_t) { samples.push_back(w); });
    return {std::move(samples), stats};
}

AcceptanceCell acceptance_cell(std::size_t n, double r, std::uint64_t proposals_per_cell,
                               std::uint64_t seed, double move_mix) {
    ChainConfig cfg = ChainConfig::with_defaults(n, r, seed, 1);
    cfg.move_mix = move_mix;
    ReflectionSampler sampler(cfg);
    while (sampler.stats().accepted < cfg.burn_in) sampler.step();
    const std::uint64_t acc0 = sampler.stats().accepted;
    const std::uint64_t prop0 = sampler.stats().proposed;
    while (sampler.stats().proposed - prop0 < proposals_per_cell) sampler.step();
    AcceptanceCell cell;
    cell.n = n;
    cell.r = r;
    cell.proposals = sampler.stats().proposed - prop0;
    cell.accepted = sampler.stats().accepted - acc0;
    cell.percent = 100.0 * static_cast<double>(cell.accepted) / static_cast<double>(cell.proposals);
    return cell;
}

std::vector<AcceptanceCell> acceptance_table(const std::vector<std::size_t>& lengths,
                                             const std::vector<double>& radii,
                                             std::uint64_t proposals_per_cell,
                                             std::uint64_t seed, double move_mix) {
    std::vector<AcceptanceCell> out;
    out.reserve(lengths.size() * radii.size());
    std::uint64_t cell_index = 0;
    for (std::size_t n : lengths)
        for (double r : radii)
            out.push_back(acceptance_cell(n, r, proposals_per_cell,
                                          derive_stream(seed, cell_index++), move_mix));
    return out;
}

} // namespace thickwalk
