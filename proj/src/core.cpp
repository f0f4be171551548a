#include "flatsurf/core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        double v = (q - p).cross(r - p);
        if (v > 1e-15) return 1;
        if (v < -1e-15) return -1;
        return 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on_seg = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return std::min(p.x, q.x) - 1e-15 <= r.x && r.x <= std::max(p.x, q.x) + 1e-15 &&
               std::min(p.y, q.y) - 1e-15 <= r.y && r.y <= std::max(p.y, q.y) + 1e-15;
    };
    if (o1 == 0 && on_seg(a, b, c)) return true;
    if (o2 == 0 && on_seg(a, b, d)) return true;
    if (o3 == 0 && on_seg(c, d, a)) return true;
    if (o4 == 0 && on_seg(c, d, b)) return true;
    return false;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double tol) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_dist(p, poly[i], poly[(i + 1) % n]) <= tol) return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
            double xx = poly[j].x + (poly[i].x - poly[j].x) * (p.y - poly[j].y) / (poly[i].y - poly[j].y);
            if (p.x < xx) inside = !inside;
        }
    }
    return inside;
}

namespace {

void validate_polygon(const EuclideanPolygon& p, double eps) {
    std::ostringstream tag;
    tag << "polygon " << p.id << ": ";
    const int n = p.size();
    if (n < 3) throw DegeneratePolygon(tag.str() + "fewer than 3 vertices");
    for (int k = 0; k < n; ++k) {
        if (p.edge_length(k) <= eps)
            throw DegeneratePolygon(tag.str() + "zero-length edge " + std::to_string(k));
    }
    if (p.area() <= 0.0) throw DegeneratePolygon(tag.str() + "non-positive signed area");
    // simplicity: no two non-adjacent edges may intersect
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(p.vertex(i), p.vertex(i + 1), p.vertex(j), p.vertex(j + 1)))
                throw DegeneratePolygon(tag.str() + "self-intersecting boundary");
        }
    }
}

}  // namespace

int ConeSurface::gluing_of(const EdgeRef& e) const {
    return gluing_index_[e.polygon][e.edge];
}

EdgeRef ConeSurface::partner(const EdgeRef& e) const {
    const EdgeGluing& g = gluings_[gluing_of(e)];
    return g.a == e ? g.b : g.a;
}

int ConeSurface::cone_point_of(const Corner& c) const {
    return cone_point_index_[c.polygon][c.vertex];
}

ConeSurface build_surface(std::vector<EuclideanPolygon> polygons,
                          std::vector<EdgeGluing> gluings, double eps) {
    if (polygons.empty()) throw DegeneratePolygon("no polygons");
    if (eps <= 0.0) throw std::invalid_argument("tolerance must be positive");

    // resolve the user-facing polygon ids to indices
    std::map<int, int> id_to_index;
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        if (!id_to_index.emplace(polygons[i].id, static_cast<int>(i)).second)
            throw DegeneratePolygon("duplicate polygon id " + std::to_string(polygons[i].id));
    }
    auto resolve = [&](EdgeRef e) {
        auto it = id_to_index.find(e.polygon);
        if (it == id_to_index.end())
            throw UnmatchedEdge("gluing refers to unknown polygon id " + std::to_string(e.polygon));
        e.polygon = it->second;
        int n = polygons[e.polygon].size();
        if (e.edge < 0 || e.edge >= n)
            throw UnmatchedEdge("gluing refers to edge " + std::to_string(e.edge) +
                                " of polygon id " + std::to_string(polygons[e.polygon].id));
        return e;
    };
    for (EdgeGluing& g : gluings) {
        g.a = resolve(g.a);
        g.b = resolve(g.b);
    }

    ConeSurface s;
    for (const auto& p : polygons) validate_polygon(p, eps);

    // perfect matching of edges
    s.gluing_index_.resize(polygons.size());
    for (std::size_t i = 0; i < polygons.size(); ++i)
        s.gluing_index_[i].assign(polygons[i].size(), -1);
    for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
        const EdgeGluing& g = gluings[gi];
        if (!g.reversed)
            throw NonOrientable("gluing " + std::to_string(gi) +
                                " identifies edges without reversal");
        if (g.a == g.b)
            throw UnmatchedEdge("gluing " + std::to_string(gi) + " glues an edge to itself");
        for (const EdgeRef& e : {g.a, g.b}) {
            int& slot = s.gluing_index_[e.polygon][e.edge];
            if (slot != -1)
                throw UnmatchedEdge("edge " + std::to_string(e.edge) + " of polygon id " +
                                    std::to_string(polygons[e.polygon].id) + " glued twice");
            slot = static_cast<int>(gi);
        }
        double la = polygons[g.a.polygon].edge_length(g.a.edge);
        double lb = polygons[g.b.polygon].edge_length(g.b.edge);
        if (std::abs(la - lb) > eps * std::max(1.0, std::max(la, lb)))
            throw LengthMismatch("glued edges differ in length: " + std::to_string(la) +
                                 " vs " + std::to_string(lb));
    }
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        for (int k = 0; k < polygons[i].size(); ++k) {
            if (s.gluing_index_[i][k] == -1)
                throw UnmatchedEdge("edge " + std::to_string(k) + " of polygon id " +
                                    std::to_string(polygons[i].id) + " not glued");
        }
    }

    s.polygons_ = std::move(polygons);
    s.gluings_ = std::move(gluings);
    s.eps_ = eps;

    // connectivity over the gluing graph
    {
        std::vector<bool> seen(s.polygons_.size(), false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        int count = 1;
        while (!q.empty()) {
            int p = q.front();
            q.pop();
            for (int k = 0; k < s.polygons_[p].size(); ++k) {
                int other = s.partner({p, k}).polygon;
                if (!seen[other]) {
                    seen[other] = true;
                    ++count;
                    q.push(other);
                }
            }
        }
        if (count != s.num_polygons())
            throw DisconnectedSurface("glued surface is not connected");
    }

    // vertex equivalence classes via corner chasing. The corner at the origin
    // of edge (p, k) is identified with the corner at the destination of its
    // partner edge; iterating next() rotates around the cone point.
    int total_corners = 0;
    for (const auto& p : s.polygons_) total_corners += p.size();

    s.cone_point_index_.resize(s.polygons_.size());
    for (std::size_t i = 0; i < s.polygons_.size(); ++i)
        s.cone_point_index_[i].assign(s.polygons_[i].size(), -1);

    for (std::size_t pi = 0; pi < s.polygons_.size(); ++pi) {
        for (int v = 0; v < s.polygons_[pi].size(); ++v) {
            if (s.cone_point_index_[pi][v] != -1) continue;
            ConePoint cp;
            Corner c{static_cast<int>(pi), v};
            int steps = 0;
            do {
                if (++steps > total_corners)
                    throw std::logic_error("corner chase failed to close up");
                s.cone_point_index_[c.polygon][c.vertex] = static_cast<int>(s.cone_points_.size());
                cp.corners.push_back(c);
                cp.total_angle += s.polygons_[c.polygon].interior_angle(c.vertex);
                EdgeRef out{c.polygon, c.vertex};
                cp.crossed_gluings.push_back(s.gluing_of(out));
                EdgeRef in = s.partner(out);
                c = Corner{in.polygon, s.polygons_[in.polygon].mod(in.edge + 1)};
            } while (!(c.polygon == static_cast<int>(pi) && c.vertex == v));
            cp.excess = cp.total_angle / (2.0 * kPi) - 1.0;
            s.cone_points_.push_back(std::move(cp));
        }
    }

    s.topology_.num_vertices = static_cast<int>(s.cone_points_.size());
    s.topology_.num_edges = static_cast<int>(s.gluings_.size());
    s.topology_.num_faces = s.num_polygons();
    s.topology_.euler_characteristic =
        s.topology_.num_vertices - s.topology_.num_edges + s.topology_.num_faces;
    s.topology_.orientable = true;
    if (s.topology_.euler_characteristic % 2 != 0)
        throw NonOrientable("odd Euler characteristic on a closed orientable surface");
    s.topology_.genus = (2 - s.topology_.euler_characteristic) / 2;

    s.total_area_ = 0.0;
    for (const auto& p : s.polygons_) s.total_area_ += p.area();

    return s;
}

std::vector<ConePoint> cone_angles(const ConeSurface& surface) {
    return surface.cone_points();
}

double check_gauss_bonnet(const ConeSurface& surface) {
    double sum = 0.0;
    for (const ConePoint& cp : surface.cone_points()) sum += cp.excess;
    return std::abs(sum - (2.0 * surface.topology().genus - 2.0));
}

Cat0Result is_cat0(const ConeSurface& surface) {
    const auto& cps = surface.cone_points();
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i].total_angle < 2.0 * kPi - surface.tolerance())
            return {false, static_cast<int>(i)};
    }
    return {true, std::nullopt};
}

double area(const ConeSurface& surface) { return surface.total_area(); }

ConeSurface scaled(const ConeSurface& surface, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("scale factor must be positive");
    std::vector<EuclideanPolygon> ps = surface.polygons();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps[i].id = static_cast<int>(i);  // stored gluings refer to positions
        for (Vec2& v : ps[i].vertices) v = v * lambda;
    }
    return build_surface(std::move(ps), surface.gluings(), surface.tolerance());
}

}  // namespace flatsurf
