// knots.hpp — open-chain knot identification: closures, planar diagrams,
// Alexander invariants, spectra and dominance.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thickwalk/rng.hpp"
#include "thickwalk/vec3.hpp"
#include "thickwalk/walk.hpp"

namespace thickwalk {

struct DegenerateClosure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vertex list interpreted cyclically; >= 3 vertices, no two consecutive
/// coincident.
struct ClosedPolygon {
    std::vector<Vec3> vertices;

    static ClosedPolygon from_vertices(std::vector<Vec3> vertices);
    std::size_t size() const { return vertices.size(); }
};

/// One passage through a crossing, in traversal order along the curve.
struct CrossingEvent {
    std::int32_t crossing;
    bool over;
};

/// Signed Gauss-code representation of a generic planar projection.
struct CrossingDiagram {
    std::vector<std::int8_t> signs;     // per crossing, +1 / -1
    std::vector<CrossingEvent> events;  // 2*crossings entries

    std::size_t crossing_count() const { return signs.size(); }
    /// every label appears exactly twice, once over and once under
    bool valid() const;
};

struct KnotClass {
    std::uint64_t determinant = 1; // |Delta(-1)|
    std::uint64_t secondary = 1;   // |Delta(-2)|; 0 when unknown
    std::string name = "0_1";

    bool is_unknot() const { return name == "0_1"; }
    bool operator==(const KnotClass& o) const {
        return determinant == o.determinant && secondary == o.secondary && name == o.name;
    }
    bool operator<(const KnotClass& o) const {
        if (determinant != o.determinant) return determinant < o.determinant;
        if (secondary != o.secondary) return secondary < o.secondary;
        return name < o.name;
    }
};

struct KnotSpectrum {
    std::map<KnotClass, std::uint64_t> counts;
    std::uint64_t total = 0;
};

enum class DominanceLevel { none, weak, dominant, strong };

struct DominanceVerdict {
    DominanceLevel level = DominanceLevel::none;
    KnotClass winner;
    double fraction = 0.0;
};

const char* to_string(DominanceLevel level);

// --- closures ---------------------------------------------------------------

/// Straight-arc closure v_n -> v_0. Throws DegenerateClosure for coincident
/// endpoints or a fully collinear walk (doubly covered segment).
ClosedPolygon closure_direct(const Walk& walk);

/// Two-segment closure v_n -> point -> v_0. The point must lie strictly
/// outside the walk's bounding sphere (centroid-centered).
ClosedPolygon closure_sphere(const Walk& walk, const Vec3& point);

/// Closure sphere convention: centered at the vertex centroid with radius
/// 3x the maximal centroid distance.
struct ClosureSphere {
    Vec3 center;
    double radius = 0.0;
};
ClosureSphere closure_sphere_of(const Walk& walk);

/// `count` area-uniform points on the closure sphere.
std::vector<Vec3> sample_sphere_points(const Walk& walk, std::size_t count, Rng& rng);

// --- diagrams ---------------------------------------------------------------

/// Topology-preserving reduction: repeatedly removes a vertex whose
/// triangle is pierced by no other edge. Conservative near degeneracies
/// (skips instead of risking a strand passage).
ClosedPolygon simplify_polygon(const ClosedPolygon& polygon);

/// Orthogonal projection along `direction` with over/under from depth.
/// Degenerate projections (near-coincident projected vertices, tangential
/// or vertex-grazing crossings, triple points) are retried with fresh
/// uniform directions, up to max_retries; nullopt when exhausted.
std::optional<CrossingDiagram> project_to_diagram(const ClosedPolygon& polygon, Vec3 direction,
                                                  Rng& rng, int max_retries = 100);

/// Reidemeister I/II reduction passes until fixpoint.
void reduce_diagram(CrossingDiagram& diagram);

// --- invariants -------------------------------------------------------------

/// |Delta(t)| at an integer t, after unit-monomial normalization of the
/// Alexander polynomial (exact integer arithmetic). 0 crossings -> 1.
/// Throws std::overflow_error if the value exceeds 64 bits.
std::uint64_t alexander_at(const CrossingDiagram& diagram, std::int64_t t);

/// Classification by (|Delta(-1)|, |Delta(-2)|) lookup over prime knots
/// through 7 crossings (plus the 3_1#3_1 composite needed to disambiguate
/// determinant 9); anything else is "unclassified(det, sec)".
KnotClass classify(const CrossingDiagram& diagram);

/// Full pipeline for a polygon: simplify, project (random generic
/// direction), reduce, classify. Diagram failure yields "unclassified".
KnotClass classify_polygon(const ClosedPolygon& polygon, Rng& rng);

/// Sphere-closure spectrum: closures to `count` sampled sphere points,
/// classified and tallied.
KnotSpectrum knot_spectrum(const Walk& walk, std::size_t closures, Rng& rng);

/// Strong (>= 90%), dominant (> 2x runner-up), weak (majority), else none.
/// Ties break toward the unknot, then lexicographically.
DominanceVerdict dominance(const KnotSpectrum& spectrum);

} // namespace thickwalk
