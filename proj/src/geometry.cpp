#include "thickwalk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thickwalk {

Plane Plane::through(const Vec3& point, const Vec3& direction) {
    const double n = direction.norm();
    if (!(n > 0.0) || !direction.is_finite())
        throw std::invalid_argument("plane normal must be a nonzero finite vector");
    return Plane{point, direction / n};
}

void reflect_tail_inplace(std::vector<Vec3>& vertices, std::size_t i, const Plane& plane) {
    for (std::size_t k = i + 1; k < vertices.size(); ++k)
        vertices[k] = reflect_point(vertices[k], plane);
}

Walk reflect_tail(const Walk& walk, std::size_t i, const Plane& plane) {
    const std::size_t n = walk.edge_count();
    if (i < 1 || i > n - 1)
        throw std::invalid_argument("reflection vertex index out of range");
    if (std::abs((walk.vertex(i) - plane.point).dot(plane.normal)) > 1e-9)
        throw std::invalid_argument("reflection plane does not pass through vertex");
    std::vector<Vec3> v = walk.vertices();
    reflect_tail_inplace(v, i, plane);
    return Walk::unchecked(std::move(v));
}

double bend_angle(const Walk& walk, std::size_t i) {
    const std::size_t n = walk.edge_count();
    if (i < 1 || i > n - 1)
        throw std::invalid_argument("bend angle index out of range");
    const Vec3 a = walk.vertex(i - 1) - walk.vertex(i);
    const Vec3 b = walk.vertex(i + 1) - walk.vertex(i);
    const double c = a.dot(b) / std::sqrt(a.norm_sq() * b.norm_sq());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

} // namespace thickwalk
