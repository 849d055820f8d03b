// AVX2 kernels. Compiled with -mavx2 only (no FMA), so each lane performs
// the same mul/add sequence as the scalar reference and results match bit
// for bit. This TU is only built on x86-64; dispatch guards execution via
// CPUID.
#include "thickwalk/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace thickwalk::kernels::avx2 {

double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count) {
    const std::size_t pairs = count - 1;
    std::size_t i = 0;
    double m = ex[0] * ex[1] + ey[0] * ey[1] + ez[0] * ez[1];
    if (pairs >= 4) {
        __m256d best = _mm256_set1_pd(m);
        for (; i + 4 <= pairs; i += 4) {
            const __m256d ax = _mm256_loadu_pd(ex + i);
            const __m256d ay = _mm256_loadu_pd(ey + i);
            const __m256d az = _mm256_loadu_pd(ez + i);
            const __m256d bx = _mm256_loadu_pd(ex + i + 1);
            const __m256d by = _mm256_loadu_pd(ey + i + 1);
            const __m256d bz = _mm256_loadu_pd(ez + i + 1);
            const __m256d d = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(ax, bx), _mm256_mul_pd(ay, by)),
                _mm256_mul_pd(az, bz));
            best = _mm256_min_pd(best, d);
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, best);
        for (double v : lanes) m = v < m ? v : m;
    }
    for (; i < pairs; ++i) {
        const double d = ex[i] * ex[i + 1] + ey[i] * ey[i + 1] + ez[i] * ez[i + 1];
        m = d < m ? d : m;
    }
    return m;
}

void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out) {
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d vz = _mm256_set1_pd(pz);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vz);
        const __m256d d2 = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
            _mm256_mul_pd(dz, dz));
        _mm256_storeu_pd(out + i, d2);
    }
    for (; i < count; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        const double dz = zs[i] - pz;
        out[i] = dx * dx + dy * dy + dz * dz;
    }
}

std::size_t select_within(double px, double py, double pz,
                          const double* xs, const double* ys, const double* zs,
                          const std::int32_t* ids, std::size_t count,
                          double threshold_sq, std::int32_t* out_ids) {
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d vz = _mm256_set1_pd(pz);
    const __m256d thr = _mm256_set1_pd(threshold_sq);
    std::size_t kept = 0;
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ids + i));
        const __m256d gx = _mm256_i32gather_pd(xs, idx, 8);
        const __m256d gy = _mm256_i32gather_pd(ys, idx, 8);
        const __m256d gz = _mm256_i32gather_pd(zs, idx, 8);
        const __m256d dx = _mm256_sub_pd(gx, vx);
        const __m256d dy = _mm256_sub_pd(gy, vy);
        const __m256d dz = _mm256_sub_pd(gz, vz);
        const __m256d d2 = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
            _mm256_mul_pd(dz, dz));
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, thr, _CMP_LE_OQ));
        while (mask) {
            const int lane = __builtin_ctz(mask);
            out_ids[kept++] = ids[i + static_cast<std::size_t>(lane)];
            mask &= mask - 1;
        }
    }
    for (; i < count; ++i) {
        const std::int32_t id = ids[i];
        const double dx = xs[id] - px;
        const double dy = ys[id] - py;
        const double dz = zs[id] - pz;
        if (dx * dx + dy * dy + dz * dz <= threshold_sq) out_ids[kept++] = id;
    }
    return kept;
}

} // namespace thickwalk::kernels::avx2

#endif // x86-64
