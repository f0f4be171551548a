#include "flatsurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool is_convex(const EuclideanPolygon& p) {
    for (int k = 0; k < p.size(); ++k)
        if (p.edge_vector(k).cross(p.edge_vector(k + 1)) < -1e-12) return false;
    return true;
}

/// Whether the open segment (a,b) stays inside the (possibly non-convex)
/// polygon: no proper crossing of a boundary edge and midpoint inside.
bool segment_inside(const EuclideanPolygon& poly, const Vec2& a, const Vec2& b) {
    for (int k = 0; k < poly.size(); ++k) {
        const Vec2& c = poly.vertex(k);
        const Vec2& d = poly.vertex(k + 1);
        double d1 = (d - c).cross(a - c);
        double d2 = (d - c).cross(b - c);
        double d3 = (b - a).cross(c - a);
        double d4 = (b - a).cross(d - a);
        if (((d1 > 1e-12 && d2 < -1e-12) || (d1 < -1e-12 && d2 > 1e-12)) &&
            ((d3 > 1e-12 && d4 < -1e-12) || (d3 < -1e-12 && d4 > 1e-12)))
            return false;
    }
    return point_in_polygon((a + b) * 0.5, poly.vertices, 1e-12);
}

double min_boundary_dist(const EuclideanPolygon& poly, const Vec2& p) {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < poly.size(); ++k)
        d = std::min(d, point_segment_dist(p, poly.vertex(k), poly.vertex(k + 1)));
    return d;
}

struct HeapItem {
    double dist;
    int vertex;
    bool operator>(const HeapItem& o) const { return dist > o.dist; }
};

}  // namespace

MeshGraph refine(const ConeSurface& surface, double h, const MeshOptions& options) {
    if (h <= 0.0) throw MeshTooCoarse("mesh spacing must be positive");
    double min_edge = std::numeric_limits<double>::infinity();
    for (const auto& p : surface.polygons())
        for (int k = 0; k < p.size(); ++k) min_edge = std::min(min_edge, p.edge_length(k));
    if (h >= min_edge)
        throw MeshTooCoarse("mesh spacing " + std::to_string(h) +
                            " is not below the shortest polygon edge " + std::to_string(min_edge));

    MeshGraph mesh;
    mesh.surface_ = std::make_shared<ConeSurface>(surface);
    mesh.h_ = h;
    mesh.options_ = options;
    const int np = surface.num_polygons();

    // Matched sample counts per gluing: an even number of intervals so edge
    // midpoints are samples, at spacing <= h on the longer of the two edges.
    std::vector<int> intervals(surface.gluings().size(), 0);
    for (std::size_t g = 0; g < surface.gluings().size(); ++g) {
        const EdgeGluing& gl = surface.gluings()[g];
        double la = surface.polygon(gl.a.polygon).edge_length(gl.a.edge);
        double lb = surface.polygon(gl.b.polygon).edge_length(gl.b.edge);
        double len = std::max(la, lb);
        intervals[g] = std::max(2, 2 * static_cast<int>(std::ceil(len / (2.0 * h))));
    }

    // copies: per-polygon corners, boundary samples, interior grid
    std::vector<std::vector<int>> corner_copy(np);
    std::vector<std::vector<std::vector<int>>> sample_copy(np);  // [poly][edge][i] -> copy
    auto add_copy = [&](int poly, Vec2 pos) {
        mesh.copies_.push_back({poly, pos, -1});
        return static_cast<int>(mesh.copies_.size()) - 1;
    };
    for (int p = 0; p < np; ++p) {
        const EuclideanPolygon& poly = surface.polygon(p);
        corner_copy[p].resize(poly.size());
        sample_copy[p].resize(poly.size());
        for (int v = 0; v < poly.size(); ++v) corner_copy[p][v] = add_copy(p, poly.vertex(v));
        for (int e = 0; e < poly.size(); ++e) {
            int n = intervals[surface.gluing_of({p, e})];
            auto& row = sample_copy[p][e];
            row.resize(n + 1);
            row[0] = corner_copy[p][e];
            row[n] = corner_copy[p][poly.mod(e + 1)];
            for (int i = 1; i < n; ++i) {
                double t = static_cast<double>(i) / n;
                row[i] = add_copy(p, poly.vertex(e) + poly.edge_vector(e) * t);
            }
        }
        // interior grid at spacing h, clear of the sampled boundary band
        double clear = options.boundary_clearance * h;
        double xmin = poly.vertices[0].x, xmax = xmin, ymin = poly.vertices[0].y, ymax = ymin;
        for (const Vec2& v : poly.vertices) {
            xmin = std::min(xmin, v.x);
            xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
        for (double gx = xmin + 0.5 * h; gx < xmax; gx += h) {
            for (double gy = ymin + 0.5 * h; gy < ymax; gy += h) {
                Vec2 pt{gx, gy};
                if (!point_in_polygon(pt, poly.vertices, 0.0)) continue;
                if (min_boundary_dist(poly, pt) < clear) continue;
                add_copy(p, pt);
            }
        }
    }
    mesh.copies_by_polygon_.resize(np);
    for (std::size_t c = 0; c < mesh.copies_.size(); ++c)
        mesh.copies_by_polygon_[mesh.copies_[c].polygon].push_back(static_cast<int>(c));

    // intra-polygon shortcut edges up to radius c*h
    const double radius = options.shortcut_radius * h + 1e-12;
    for (int p = 0; p < np; ++p) {
        const EuclideanPolygon& poly = surface.polygon(p);
        const bool convex = is_convex(poly);
        const auto& ids = mesh.copies_by_polygon_[p];
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const Vec2& a = mesh.copies_[ids[i]].pos;
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const Vec2& b = mesh.copies_[ids[j]].pos;
                if (std::abs(a.x - b.x) > radius || std::abs(a.y - b.y) > radius) continue;
                double w = dist(a, b);
                if (w > radius || w < 1e-12) continue;
                if (!convex && !segment_inside(poly, a, b)) continue;
                mesh.edges_.push_back({ids[i], ids[j], w});
            }
        }
    }

    // weld matched boundary samples across each gluing (parameter t <-> 1-t)
    UnionFind uf(static_cast<int>(mesh.copies_.size()));
    for (std::size_t g = 0; g < surface.gluings().size(); ++g) {
        const EdgeGluing& gl = surface.gluings()[g];
        const auto& ra = sample_copy[gl.a.polygon][gl.a.edge];
        const auto& rb = sample_copy[gl.b.polygon][gl.b.edge];
        const int n = intervals[g];
        for (int i = 0; i <= n; ++i) {
            mesh.welds_.push_back({ra[i], rb[n - i], static_cast<int>(g)});
            uf.unite(ra[i], rb[n - i]);
        }
    }
    std::vector<int> base_of_root(mesh.copies_.size(), -1);
    for (std::size_t c = 0; c < mesh.copies_.size(); ++c) {
        int r = uf.find(static_cast<int>(c));
        if (base_of_root[r] < 0) base_of_root[r] = mesh.num_base_++;
        mesh.copies_[c].base = base_of_root[r];
    }

    mesh.boundary_samples_.resize(np);
    for (int p = 0; p < np; ++p) {
        mesh.boundary_samples_[p].resize(surface.polygon(p).size());
        for (int e = 0; e < surface.polygon(p).size(); ++e)
            for (int c : sample_copy[p][e])
                mesh.boundary_samples_[p][e].push_back(mesh.copies_[c].base);
    }
    for (const ConePoint& cp : surface.cone_points()) {
        const Corner& c = cp.corners.front();
        mesh.cone_vertex_ids_.push_back(mesh.copies_[corner_copy[c.polygon][c.vertex]].base);
    }

    // CSR adjacency over base vertices
    std::vector<int> deg(mesh.num_base_, 0);
    for (const MeshEdge& e : mesh.edges_) {
        ++deg[mesh.copies_[e.copy_a].base];
        ++deg[mesh.copies_[e.copy_b].base];
    }
    mesh.adj_offsets_.assign(mesh.num_base_ + 1, 0);
    for (int v = 0; v < mesh.num_base_; ++v) mesh.adj_offsets_[v + 1] = mesh.adj_offsets_[v] + deg[v];
    mesh.adj_targets_.resize(mesh.adj_offsets_.back());
    mesh.adj_weights_.resize(mesh.adj_offsets_.back());
    mesh.adj_edge_ids_.resize(mesh.adj_offsets_.back());
    std::vector<int> fill(mesh.adj_offsets_.begin(), mesh.adj_offsets_.end() - 1);
    for (std::size_t i = 0; i < mesh.edges_.size(); ++i) {
        const MeshEdge& e = mesh.edges_[i];
        int u = mesh.copies_[e.copy_a].base;
        int v = mesh.copies_[e.copy_b].base;
        mesh.adj_targets_[fill[u]] = v;
        mesh.adj_weights_[fill[u]] = e.weight;
        mesh.adj_edge_ids_[fill[u]++] = static_cast<int>(i);
        mesh.adj_targets_[fill[v]] = u;
        mesh.adj_weights_[fill[v]] = e.weight;
        mesh.adj_edge_ids_[fill[v]++] = static_cast<int>(i);
    }

    // the welded graph must be connected if the surface is
    std::vector<char> seen(mesh.num_base_, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int k = mesh.adj_offsets_[v]; k < mesh.adj_offsets_[v + 1]; ++k)
            if (!seen[mesh.adj_targets_[k]]) {
                seen[mesh.adj_targets_[k]] = 1;
                stack.push_back(mesh.adj_targets_[k]);
            }
    }
    if (reached != mesh.num_base_)
        throw MeshTooCoarse("mesh graph disconnected; decrease the spacing");
    return mesh;
}

std::vector<int> MeshGraph::skeleton_vertices() const {
    std::set<int> out;
    for (const auto& per_poly : boundary_samples_)
        for (const auto& row : per_poly) out.insert(row.begin(), row.end());
    return {out.begin(), out.end()};
}

int MeshGraph::nearest_copy(int polygon, const Vec2& point) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c : copies_by_polygon_[polygon]) {
        double d = dist(copies_[c].pos, point);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<double> distances_from(const MeshGraph& mesh, int source) {
    std::vector<double> dist(mesh.num_vertices(), std::numeric_limits<double>::infinity());
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    const auto& wts = mesh.adj_weights();
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (int k = off[v]; k < off[v + 1]; ++k) {
            double nd = d + wts[k];
            if (nd < dist[tgt[k]]) {
                dist[tgt[k]] = nd;
                heap.push({nd, tgt[k]});
            }
        }
    }
    return dist;
}

double distance(const MeshGraph& mesh, int a, int b) {
    std::vector<double> dist(mesh.num_vertices(), std::numeric_limits<double>::infinity());
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[a] = 0.0;
    heap.push({0.0, a});
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    const auto& wts = mesh.adj_weights();
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (v == b) return d;
        if (d > dist[v]) continue;
        for (int k = off[v]; k < off[v + 1]; ++k) {
            double nd = d + wts[k];
            if (nd < dist[tgt[k]]) {
                dist[tgt[k]] = nd;
                heap.push({nd, tgt[k]});
            }
        }
    }
    return dist[b];
}

DisplacementResult displacement(const MeshGraph& mesh, const std::vector<int>& involution,
                                const std::vector<int>& skeleton) {
    if (static_cast<int>(involution.size()) != mesh.num_vertices())
        throw NotInvolution("involution must assign every mesh vertex");
    std::vector<char> in_skel(mesh.num_vertices(), 0);
    for (int v : skeleton) in_skel[v] = 1;
    for (int v : skeleton) {
        int w = involution[v];
        if (w < 0 || w >= mesh.num_vertices() || !in_skel[w] || involution[w] != v)
            throw NotInvolution("map is not an involution of the skeleton subset");
    }

    DisplacementResult res;
    res.delta = std::numeric_limits<double>::infinity();
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    const auto& wts = mesh.adj_weights();
    std::vector<double> dist;
    std::vector<int> parent;
    for (int src : skeleton) {
        const int goal = involution[src];
        if (goal == src) {
            res = {0.0, src, src, {src}};
            return res;
        }
        dist.assign(mesh.num_vertices(), std::numeric_limits<double>::infinity());
        parent.assign(mesh.num_vertices(), -1);
        std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
        dist[src] = 0.0;
        heap.push({0.0, src});
        bool hit = false;
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d >= res.delta) break;  // can no longer improve the minimum
            if (v == goal) {
                hit = true;
                break;
            }
            if (d > dist[v]) continue;
            for (int k = off[v]; k < off[v + 1]; ++k) {
                double nd = d + wts[k];
                if (nd < dist[tgt[k]]) {
                    dist[tgt[k]] = nd;
                    parent[tgt[k]] = v;
                    heap.push({nd, tgt[k]});
                }
            }
        }
        if (hit && dist[goal] < res.delta) {
            res.delta = dist[goal];
            res.witness = src;
            res.witness_image = goal;
            res.path.clear();
            for (int v = goal; v != -1; v = parent[v]) res.path.push_back(v);
            std::reverse(res.path.begin(), res.path.end());
        }
    }
    return res;
}

}  // namespace flatsurf
