// sampler.hpp — the reflection-method Markov chain on thick walks.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "thickwalk/geometry.hpp"
#include "thickwalk/rng.hpp"
#include "thickwalk/thickness.hpp"
#include "thickwalk/walk.hpp"

namespace thickwalk {

struct ChainConfig {
    std::size_t n = 0;            // edge count, >= 2
    double r = 0.0;               // tube radius
    std::uint64_t seed = 0;
    std::uint64_t burn_in = 0;    // accepted moves before sampling
    std::uint64_t stride = 1;     // accepted moves between samples
    std::uint64_t samples = 1;
    double move_mix = 0.5;        // probability of a single (vs double) move
    // 1 = the plane is drawn uniformly and an angle-violating draw counts as
    // a rejected move (symmetric proposal, uniform stationary measure).
    // Values > 1 retry until allowable: conditional-uniform planes, which
    // bias the chain toward states with small allowable sets; useful for
    // studying the proposal but not for production sampling.
    int max_plane_retries = 1;

    /// burn_in = 10n, stride = n.
    static ChainConfig with_defaults(std::size_t n, double r, std::uint64_t seed,
                                     std::uint64_t samples);
    void validate() const; // throws std::invalid_argument
};

struct ChainStats {
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t plane_exhausted = 0; // counted inside proposed as rejections
    std::uint64_t renormalizations = 0;

    double acceptance_rate() const {
        return proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
    }
};

/// (0,0,0),(1,0,0),...,(n,0,0) — the distinguished reachable state.
Walk straight_walk(std::size_t n);

/// Plane through vertex i whose tail reflection keeps the bend angle at i
/// allowable; conditional-uniform over the allowable set (uniform projective
/// normals, rejection on the angle test). nullopt after max_retries
/// consecutive failures (cannot happen for r = 0).
std::optional<Plane> propose_allowable_plane(const Walk& walk, std::size_t i,
                                             const ThicknessParams& params, Rng& rng,
                                             int max_retries = 64);

/// One single-reflection proposal; on rejection the returned walk is
/// bit-identical to the input.
std::pair<Walk, bool> single_reflection_step(const Walk& walk, const ThicknessParams& params,
                                             Rng& rng, int max_plane_retries = 1);

/// One double-reflection proposal (i < j drawn uniformly over distinct
/// pairs; the second plane is validated against the once-reflected
/// geometry). Requires n >= 3.
std::pair<Walk, bool> double_reflection_step(const Walk& walk, const ThicknessParams& params,
                                             Rng& rng, int max_plane_retries = 1);

/// Sequential chain state machine; owns walk, RNG and thickness checker.
class ReflectionSampler {
public:
    explicit ReflectionSampler(const ChainConfig& cfg);

    /// One proposal (kind chosen by move_mix); returns accepted.
    bool step();

    const Walk& current() const { return walk_; }
    const ChainStats& stats() const { return stats_; }

private:
    bool step_single();
    bool step_double();
    bool apply_and_check(std::size_t first_changed);
    void renormalize();

    ChainConfig cfg_;
    ThicknessParams params_;
    TubeChecker checker_;
    Walk walk_;
    Rng rng_;
    ChainStats stats_;
    std::vector<Vec3> saved_tail_;
    std::uint64_t accepted_since_renorm_ = 0;

    static constexpr std::uint64_t kRenormInterval = 1'000'000;
};

/// Runs burn-in, then emits one sample every `stride` accepted moves until
/// `samples` are produced. Deterministic for fixed config.
ChainStats run_chain(const ChainConfig& cfg,
                     const std::function<void(const Walk&, std::uint64_t)>& sink);

std::pair<std::vector<Walk>, ChainStats> run_chain_collect(const ChainConfig& cfg);

struct AcceptanceCell {
    std::size_t n = 0;
    double r = 0.0;
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
    double percent = 0.0;
};

/// Long-run acceptance for one (n, r) cell: fresh chain, 10n accepted
/// burn-in moves discarded, then proposals_per_cell proposals measured.
AcceptanceCell acceptance_cell(std::size_t n, double r, std::uint64_t proposals_per_cell,
                               std::uint64_t seed, double move_mix = 0.5);

std::vector<AcceptanceCell> acceptance_table(const std::vector<std::size_t>& lengths,
                                             const std::vector<double>& radii,
                                             std::uint64_t proposals_per_cell,
                                             std::uint64_t seed, double move_mix = 0.5);

} // namespace thickwalk
