// Planar diagram extraction and Reidemeister I/II reduction.
#include <algorithm>
#include <cmath>

#include "thickwalk/knots.hpp"

namespace thickwalk {

namespace {

constexpr double kDegenEps = 1e-9;

struct Frame {
    Vec3 u, v, d;
};

Frame frame_for(Vec3 direction) {
    const Vec3 d = direction.normalized();
    Vec3 a{1.0, 0.0, 0.0};
    const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    if (ay <= ax && ay <= az) a = Vec3{0.0, 1.0, 0.0};
    else if (az <= ax && az <= ay) a = Vec3{0.0, 0.0, 1.0};
    const Vec3 u = d.cross(a).normalized();
    return {u, d.cross(u), d};
}

struct Hit {
    double param;       // position along the edge
    std::int32_t id;
    bool over;
};

// One projection attempt; nullopt when a degeneracy is detected.
std::optional<CrossingDiagram> try_project(const ClosedPolygon& poly, const Vec3& direction) {
    const Frame f = frame_for(direction);
    const std::size_t m = poly.size();
    std::vector<double> px(m), py(m), depth(m);
    for (std::size_t i = 0; i < m; ++i) {
        px[i] = poly.vertices[i].dot(f.u);
        py[i] = poly.vertices[i].dot(f.v);
        depth[i] = poly.vertices[i].dot(f.d);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dx = px[i] - px[j], dy = py[i] - py[j];
            if (dx * dx + dy * dy < kDegenEps * kDegenEps) return std::nullopt;
        }

    CrossingDiagram diagram;
    std::vector<std::vector<Hit>> hits(m);
    std::vector<std::pair<double, double>> points; // 2D crossing locations
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t i2 = (i + 1) % m;
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::size_t j2 = (j + 1) % m;
            if (j == i || j2 == i || i2 == j) continue; // shared vertex
            const double rx = px[i2] - px[i], ry = py[i2] - py[i];
            const double sx = px[j2] - px[j], sy = py[j2] - py[j];
            const double den = rx * sy - ry * sx;
            const double qx = px[j] - px[i], qy = py[j] - py[i];
            const double ri = std::hypot(rx, ry), rj = std::hypot(sx, sy);
            if (std::abs(den) < kDegenEps * ri * rj) {
                // parallel in projection: degenerate only if overlapping
                const double cross_q = qx * ry - qy * rx;
                if (std::abs(cross_q) < kDegenEps * ri) return std::nullopt;
                continue;
            }
            const double s = (qx * sy - qy * sx) / den;
            const double t = (qx * ry - qy * rx) / den;
            if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) continue;
            // crossing too close to a vertex
            if (s * ri < kDegenEps || (1.0 - s) * ri < kDegenEps) return std::nullopt;
            if (t * rj < kDegenEps || (1.0 - t) * rj < kDegenEps) return std::nullopt;
            const double zi = depth[i] + s * (depth[i2] - depth[i]);
            const double zj = depth[j] + t * (depth[j2] - depth[j]);
            if (std::abs(zi - zj) < kDegenEps) return std::nullopt; // 3D contact
            const double cx = px[i] + s * rx, cy = py[i] + s * ry;
            for (const auto& [ox, oy] : points)
                if (std::hypot(cx - ox, cy - oy) < kDegenEps) return std::nullopt;
            points.emplace_back(cx, cy);

            const auto id = static_cast<std::int32_t>(diagram.signs.size());
            const bool i_over = zi > zj;
            const double ox = i_over ? rx : sx, oy = i_over ? ry : sy;
            const double ux = i_over ? sx : rx, uy = i_over ? sy : ry;
            diagram.signs.push_back(ox * uy - oy * ux > 0.0 ? 1 : -1);
            hits[i].push_back({s, id, i_over});
            hits[j].push_back({t, id, !i_over});
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::sort(hits[i].begin(), hits[i].end(),
                  [](const Hit& a, const Hit& b) { return a.param < b.param; });
        for (const Hit& h : hits[i]) diagram.events.push_back({h.id, h.over});
    }
    return diagram;
}

} // namespace

bool CrossingDiagram::valid() const {
    if (events.size() != 2 * signs.size()) return false;
    std::vector<int> over_seen(signs.size(), 0), under_seen(signs.size(), 0);
    for (const auto& e : events) {
        if (e.crossing < 0 || static_cast<std::size_t>(e.crossing) >= signs.size()) return false;
        (e.over ? over_seen : under_seen)[static_cast<std::size_t>(e.crossing)]++;
    }
    for (std::size_t k = 0; k < signs.size(); ++k)
        if (over_seen[k] != 1 || under_seen[k] != 1) return false;
    return true;
}

std::optional<CrossingDiagram> project_to_diagram(const ClosedPolygon& polygon, Vec3 direction,
                                                  Rng& rng, int max_retries) {
    if (!(direction.norm_sq() > 0.0))
        throw std::invalid_argument("projection direction must be nonzero");
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        if (auto d = try_project(polygon, direction)) return d;
        direction = rng.unit_vector();
    }
    return std::nullopt;
}

void reduce_diagram(CrossingDiagram& diagram) {
    bool changed = true;
    while (changed && !diagram.signs.empty()) {
        changed = false;
        const std::size_t m = diagram.events.size();
        std::vector<bool> drop(diagram.signs.size(), false);

        // R1: the two passages of a crossing are adjacent along the curve
        for (std::size_t k = 0; k < m && !changed; ++k) {
            const auto& a = diagram.events[k];
            const auto& b = diagram.events[(k + 1) % m];
            if (a.crossing == b.crossing) {
                drop[static_cast<std::size_t>(a.crossing)] = true;
                changed = true;
            }
        }
        // R2: two crossings adjacent on both strands, one strand over at
        // both, the other under at both
        for (std::size_t k = 0; k < m && !changed; ++k) {
            const auto& a = diagram.events[k];
            const auto& b = diagram.events[(k + 1) % m];
            if (a.crossing == b.crossing || !a.over || !b.over) continue;
            for (std::size_t l = 0; l < m && !changed; ++l) {
                const auto& c = diagram.events[l];
                const auto& d = diagram.events[(l + 1) % m];
                if (c.over || d.over) continue;
                const bool same = (c.crossing == a.crossing && d.crossing == b.crossing) ||
                                  (c.crossing == b.crossing && d.crossing == a.crossing);
                if (same) {
                    drop[static_cast<std::size_t>(a.crossing)] = true;
                    drop[static_cast<std::size_t>(b.crossing)] = true;
                    changed = true;
                }
            }
        }
        if (!changed) break;

        // rebuild with dropped crossings removed and ids compacted
        std::vector<std::int32_t> remap(diagram.signs.size(), -1);
        std::vector<std::int8_t> signs;
        for (std::size_t k = 0; k < diagram.signs.size(); ++k)
            if (!drop[k]) {
                remap[k] = static_cast<std::int32_t>(signs.size());
                signs.push_back(diagram.signs[k]);
            }
        std::vector<CrossingEvent> events;
        events.reserve(2 * signs.size());
        for (const auto& e : diagram.events)
            if (remap[static_cast<std::size_t>(e.crossing)] >= 0)
                events.push_back({remap[static_cast<std::size_t>(e.crossing)], e.over});
        diagram.signs = std::move(signs);
        diagram.events = std::move(events);
    }
}

} // namespace thickwalk
