#include "thickwalk/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace thickwalk::kernels {

namespace {

Backend resolve_default() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const char* env = std::getenv("THICKWALK_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_supported())
                throw std::runtime_error("THICKWALK_SIMD=avx2 but CPU lacks AVX2");
            return Backend::avx2;
        }
        // anything else (incl. "auto") falls through to detection
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
#else
    return Backend::scalar;
#endif
}

Backend& backend_slot() {
    static Backend b = resolve_default();
    return b;
}

} // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() { return backend_slot(); }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        throw std::invalid_argument("AVX2 backend unavailable on this CPU");
    backend_slot() = b;
}

double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend_slot() == Backend::avx2)
        return avx2::min_consecutive_dot(ex, ey, ez, count);
#endif
    return scalar::min_consecutive_dot(ex, ey, ez, count);
}

void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend_slot() == Backend::avx2)
        return avx2::point_dist_sq(px, py, pz, xs, ys, zs, count, out);
#endif
    return scalar::point_dist_sq(px, py, pz, xs, ys, zs, count, out);
}

std::size_t select_within(double px, double py, double pz,
                          const double* xs, const double* ys, const double* zs,
                          const std::int32_t* ids, std::size_t count,
                          double threshold_sq, std::int32_t* out_ids) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend_slot() == Backend::avx2)
        return avx2::select_within(px, py, pz, xs, ys, zs, ids, count, threshold_sq, out_ids);
#endif
    return scalar::select_within(px, py, pz, xs, ys, zs, ids, count, threshold_sq, out_ids);
}

} // namespace thickwalk::kernels
