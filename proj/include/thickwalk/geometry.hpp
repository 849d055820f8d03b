// geometry.hpp — reflection planes, point/tail reflection, bend angles.
#pragma once

#include <cstddef>

#include "thickwalk/vec3.hpp"
#include "thickwalk/walk.hpp"

namespace thickwalk {

/// Reflection plane as (point, unit normal). Plane(p, u) and Plane(p, -u)
/// denote the same plane; every operation here is invariant under normal
/// negation.
struct Plane {
    Vec3 point;
    Vec3 normal; // unit length within 1e-12

    static Plane through(const Vec3& point, const Vec3& direction);
};

/// Mirror image of p across the plane: p - 2((p - q)·u)u.
inline Vec3 reflect_point(const Vec3& p, const Plane& plane) {
    const double d = (p - plane.point).dot(plane.normal);
    return p - plane.normal * (2.0 * d);
}

/// Reflects vertices i+1..n in place; vertices 0..i untouched.
void reflect_tail_inplace(std::vector<Vec3>& vertices, std::size_t i, const Plane& plane);

/// Value-semantics variant. Requires 1 <= i <= n-1 and the plane passing
/// through vertex i (within 1e-9); throws std::invalid_argument otherwise.
Walk reflect_tail(const Walk& walk, std::size_t i, const Plane& plane);

/// Interior angle at vertex i between (v_{i-1}-v_i) and (v_{i+1}-v_i),
/// in [0, pi]: pi for a straight continuation, 0 for exact back-tracking.
/// Requires 1 <= i <= n-1.
double bend_angle(const Walk& walk, std::size_t i);

} // namespace thickwalk
