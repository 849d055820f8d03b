// Scalar reference kernels. The AVX2 variants mirror these expressions
// lane for lane; keep the two files in sync.
#include "thickwalk/kernels.hpp"

namespace thickwalk::kernels::scalar {

double min_consecutive_dot(const double* ex, const double* ey, const double* ez,
                           std::size_t count) {
    double m = ex[0] * ex[1] + ey[0] * ey[1] + ez[0] * ez[1];
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double d = ex[i] * ex[i + 1] + ey[i] * ey[i + 1] + ez[i] * ez[i + 1];
        m = d < m ? d : m;
    }
    return m;
}

void point_dist_sq(double px, double py, double pz,
                   const double* xs, const double* ys, const double* zs,
                   std::size_t count, double* out) {
    for (std::size_t i = 0; i < count; ++i) {
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
    std::size_t kept = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::int32_t id = ids[i];
        const double dx = xs[id] - px;
        const double dy = ys[id] - py;
        const double dz = zs[id] - pz;
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (d2 <= threshold_sq) out_ids[kept++] = id;
    }
    return kept;
}

} // namespace thickwalk::kernels::scalar
