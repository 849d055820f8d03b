// kernels.hpp — data-parallel inner loops behind the thickness checks.
//
// Every kernel has a scalar reference implementation and an AVX2 variant;
// the active one is picked at runtime (CPUID), overridable for testing via
// force_backend() or the THICKWALK_SIMD environment variable
// (scalar | avx2 | auto). The AVX2 variants perform the same IEEE
// operations per lane as the scalar code (no FMA contraction), so outputs
// are bit-identical; equivalence is asserted by tests/unit_kernels.
#pragma once

#include <cstddef>
#include <cstdint>

namespace thickwalk::kernels {

enum class Backend { scalar, avx2 };

/// Backend currently in use (resolved on first call).
Backend active_backend();

/// True if the AVX2 variants can run on this CPU.
bool avx2_supported();

/// Test hook: force a backend. Throws std::invalid_argument when asked for
/// avx2 on a CPU without it.
void force_backend(Backend b);

/// Minimum of e_i·e_{i+1} over consecutive edge vectors (SoA), i in
/// [0, count-2]. The minimum bend angle of a unit-edge walk is
/// acos(-min_dot). Requires count >= 2.
double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count);

/// Squared distances from one point to `count` points given in SoA form.
void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out);

/// Gathered prefilter: for each id in ids, computes the squared distance
/// from (px,py,pz) to point id and appends id to out_ids when it is
/// <= threshold_sq. Returns the number of survivors. Order of survivors
/// follows the input order (deterministic).
std::size_t select_within(double px, double py, double pz,
                          const double* xs, const double* ys, const double* zs,
                          const std::int32_t* ids, std::size_t count,
                          double threshold_sq, std::int32_t* out_ids);

// Reference implementations, callable directly (used by the equivalence
// tests and as the non-x86 fallback).
namespace scalar {
double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count);
void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out);
std::size_t select_within(double px, double py, double pz,
                          const double* xs, const double* ys, const double* zs,
                          const std::int32_t* ids, std::size_t count,
                          double threshold_sq, std::int32_t* out_ids);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count);
void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out);
std::size_t select_within(double px, double py, double pz,
                          const double* xs, const double* ys, const double* zs,
                          const std::int32_t* ids, std::size_t count,
                          double threshold_sq, std::int32_t* out_ids);
} // namespace avx2
#endif

} // namespace thickwalk::kernels
