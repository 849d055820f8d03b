#include "thickwalk/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace thickwalk {

namespace {

void check_invariants(const std::vector<Vec3>& v) {
    if (v.size() < 3)
        throw std::invalid_argument("walk needs at least 2 edges");
    if (!(v[0].x == 0.0 && v[0].y == 0.0 && v[0].z == 0.0))
        throw std::invalid_argument("walk must be rooted at the origin");
    for (const auto& p : v)
        if (!p.is_finite())
            throw std::invalid_argument("walk has non-finite coordinates");
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double len = (v[i + 1] - v[i]).norm();
        if (std::abs(len - 1.0) > Walk::kEdgeTolerance)
            throw std::invalid_argument("walk edge " + std::to_string(i) +
                                        " is not unit length: " + std::to_string(len));
    }
}

} // namespace

Walk Walk::from_vertices(std::vector<Vec3> vertices) {
    check_invariants(vertices);
    return Walk(std::move(vertices));
}

Walk Walk::unchecked(std::vector<Vec3> vertices) {
    return Walk(std::move(vertices));
}

bool Walk::valid() const {
    try {
        check_invariants(vertices_);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

} // namespace thickwalk
