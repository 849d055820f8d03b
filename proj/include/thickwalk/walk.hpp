// walk.hpp — equilateral open chain rooted at the origin.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thickwalk/vec3.hpp"

namespace thickwalk {

/// Ordered vertex list v_0..v_n of an open chain with n unit edges.
/// Invariants: v_0 = (0,0,0) exactly, |v_{i+1}-v_i| = 1 within 1e-9
/// relative tolerance, n >= 2, all coordinates finite.
class Walk {
public:
    static constexpr double kEdgeTolerance = 1e-9;

    /// Validating constructor; throws std::invalid_argument on violation.
    static Walk from_vertices(std::vector<Vec3> vertices);

    /// Non-validating fast path for callers that maintain the invariants
    /// themselves (the sampler's hot loop).
    static Walk unchecked(std::vector<Vec3> vertices);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    std::vector<Vec3>& mutable_vertices() { return vertices_; }

    std::size_t edge_count() const { return vertices_.size() - 1; }
    std::size_t vertex_count() const { return vertices_.size(); }

    const Vec3& vertex(std::size_t i) const { return vertices_[i]; }
    Vec3 edge(std::size_t i) const { return vertices_[i + 1] - vertices_[i]; }

    /// Re-checks all invariants; returns false instead of throwing.
    bool valid() const;

    bool operator==(const Walk& o) const { return vertices_ == o.vertices_; }

private:
    explicit Walk(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {}
    std::vector<Vec3> vertices_;
};

} // namespace thickwalk
