#include "flatsurf/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct MultiSource {
    std::vector<double> dist;
    std::vector<int> label;          // site index, lowest index wins ties
    std::vector<int> parent_vertex;  // tree edge toward the owning site
    std::vector<int> parent_entry;   // CSR entry used for that step
};

MultiSource multi_source(const MeshGraph& mesh, const std::vector<int>& sites) {
    MultiSource ms;
    const int nb = mesh.num_vertices();
    ms.dist.assign(nb, kInf);
    ms.label.assign(nb, -1);
    ms.parent_vertex.assign(nb, -1);
    ms.parent_entry.assign(nb, -1);
    struct Item {
        double d;
        int lbl, v;
        bool operator>(const Item& o) const { return std::tie(d, lbl) > std::tie(o.d, o.lbl); }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        ms.dist[sites[i]] = 0.0;
        ms.label[sites[i]] = static_cast<int>(i);
        heap.push({0.0, static_cast<int>(i), sites[i]});
    }
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    const auto& wts = mesh.adj_weights();
    // near-ties go to the lowest site index, so equidistant loci get labeled
    // consistently despite floating-point noise
    const double eps = 1e-7 * mesh.h();
    while (!heap.empty()) {
        auto [d, lbl, v] = heap.top();
        heap.pop();
        if (d > ms.dist[v] + eps || lbl > ms.label[v]) continue;
        for (int k = off[v]; k < off[v + 1]; ++k) {
            int t = tgt[k];
            double nd = d + wts[k];
            bool better = nd < ms.dist[t] - eps;
            bool tie = !better && nd < ms.dist[t] + eps && lbl < ms.label[t];
            if (better || tie) {
                ms.dist[t] = std::min(ms.dist[t], nd);
                ms.label[t] = lbl;
                ms.parent_vertex[t] = v;
                ms.parent_entry[t] = k;
                heap.push({ms.dist[t], lbl, t});
            }
        }
    }
    return ms;
}

/// Angular coordinate system around a site: per copy of the site's base
/// vertex, a reference direction and the cumulative angle where its chart
/// sector begins. Covers cone-point sites (corner copies, ordered by the
/// corner orbit), smooth interior sites and edge-sample sites.
struct SiteChart {
    std::map<int, std::pair<double, Vec2>> by_copy;  // copy -> (offset, reference dir)
    double total_angle = 2.0 * kPi;

    double angle_of(int copy, const Vec2& dir) const {
        auto it = by_copy.find(copy);
        if (it == by_copy.end())
            throw InconsistentInputs("mesh edge leaves the site outside its charts");
        double a = it->second.first + ccw_angle(it->second.second, dir);
        return std::fmod(a, total_angle);
    }
};

bool on_edge(const EuclideanPolygon& poly, int edge, const Vec2& p) {
    return point_segment_dist(p, poly.vertex(edge), poly.vertex(edge + 1)) < 1e-9;
}

SiteChart build_site_chart(const MeshGraph& mesh, int site) {
    const ConeSurface& s = mesh.surface();
    SiteChart chart;

    // cone-point site: one chart sector per corner of the orbit
    const auto& cone_ids = mesh.cone_vertex_ids();
    for (std::size_t cp = 0; cp < cone_ids.size(); ++cp) {
        if (cone_ids[cp] != site) continue;
        const ConePoint& point = s.cone_points()[cp];
        chart.total_angle = point.total_angle;
        // the corner chase crosses each corner's outgoing edge, which walks
        // clockwise around the point; lay the sectors out counter-clockwise
        double acc = 0.0;
        const std::size_t m = point.corners.size();
        for (std::size_t idx = 0; idx < m; ++idx) {
            const Corner& c = point.corners[idx == 0 ? 0 : m - idx];
            const EuclideanPolygon& poly = s.polygon(c.polygon);
            int copy = mesh.nearest_copy(c.polygon, poly.vertex(c.vertex));
            chart.by_copy[copy] = {acc, poly.edge_vector(c.vertex)};
            acc += poly.interior_angle(c.vertex);
        }
        return chart;
    }

    std::vector<int> copies;
    for (std::size_t c = 0; c < mesh.copies().size(); ++c)
        if (mesh.copies()[c].base == site) copies.push_back(static_cast<int>(c));
    if (copies.size() == 1) {
        chart.by_copy[copies[0]] = {0.0, Vec2{1, 0}};
        return chart;
    }
    if (copies.size() == 2) {
        // boundary sample welded across one gluing: two half-plane sectors
        for (const WeldPair& w : mesh.welds()) {
            if ((w.copy_a == copies[0] && w.copy_b == copies[1]) ||
                (w.copy_a == copies[1] && w.copy_b == copies[0])) {
                const EdgeGluing& g = s.gluings()[w.gluing];
                for (int c : copies) {
                    const MeshCopy& mc = mesh.copies()[c];
                    const EdgeRef& side = mc.polygon == g.a.polygon &&
                                                  on_edge(s.polygon(g.a.polygon), g.a.edge, mc.pos)
                                              ? g.a
                                              : g.b;
                    double offset = (&side == &g.a) ? 0.0 : kPi;
                    chart.by_copy[c] = {offset, s.polygon(side.polygon).edge_vector(side.edge)};
                }
                return chart;
            }
        }
    }
    throw InconsistentInputs("unsupported site location for angle extraction");
}

}  // namespace

VoronoiDecomposition voronoi_decompose(const MeshGraph& mesh, const std::vector<int>& sites,
                                       const std::vector<int>* involution) {
    if (sites.size() < 2) throw InconsistentInputs("need at least two sites");
    for (int v : sites)
        if (v < 0 || v >= mesh.num_vertices()) throw InconsistentInputs("site is not a mesh vertex");

    VoronoiDecomposition vd;
    vd.mesh = std::make_shared<MeshGraph>(mesh);
    vd.sites = sites;
    MultiSource ms = multi_source(mesh, sites);
    vd.labels = ms.label;
    vd.cells.resize(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) vd.cells[i].site = sites[i];
    for (int v = 0; v < mesh.num_vertices(); ++v)
        vd.cells[ms.label[v]].max_radius = std::max(vd.cells[ms.label[v]].max_radius, ms.dist[v]);

    // --- cell areas: equal-weight polygon subsampling at spacing h/2 ---
    const ConeSurface& s = mesh.surface();
    const double step = 0.5 * mesh.h();
    const double radius = mesh.options().shortcut_radius * mesh.h() + 1e-12;
    for (int p = 0; p < s.num_polygons(); ++p) {
        const EuclideanPolygon& poly = s.polygon(p);
        // bucket this polygon's copies for nearby-copy queries
        std::map<std::pair<int, int>, std::vector<int>> buckets;
        auto key = [&](const Vec2& q) {
            return std::pair{static_cast<int>(std::floor(q.x / radius)),
                             static_cast<int>(std::floor(q.y / radius))};
        };
        for (std::size_t c = 0; c < mesh.copies().size(); ++c)
            if (mesh.copies()[c].polygon == p) buckets[key(mesh.copies()[c].pos)].push_back(c);

        double xmin = poly.vertices[0].x, xmax = xmin, ymin = poly.vertices[0].y, ymax = ymin;
        for (const Vec2& v : poly.vertices) {
            xmin = std::min(xmin, v.x);
            xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
        std::vector<int> assigned;
        for (double gx = xmin + 0.5 * step; gx < xmax; gx += step) {
            for (double gy = ymin + 0.5 * step; gy < ymax; gy += step) {
                Vec2 pt{gx, gy};
                if (!point_in_polygon(pt, poly.vertices, 0.0)) continue;
                double best = kInf;
                int best_site = -1;
                auto [bx, by] = key(pt);
                for (int dx = -1; dx <= 1; ++dx) {
                    for (int dy = -1; dy <= 1; ++dy) {
                        auto it = buckets.find({bx + dx, by + dy});
                        if (it == buckets.end()) continue;
                        for (int c : it->second) {
                            double score = ms.dist[mesh.copies()[c].base] +
                                           dist(mesh.copies()[c].pos, pt);
                            int site = ms.label[mesh.copies()[c].base];
                            if (score < best - 1e-12 ||
                                (score < best + 1e-12 && site < best_site)) {
                                best = score;
                                best_site = site;
                            }
                        }
                    }
                }
                if (best_site < 0) best_site = ms.label[mesh.nearest_vertex(p, pt)];
                assigned.push_back(best_site);
            }
        }
        if (assigned.empty()) {
            vd.cells[ms.label[mesh.nearest_vertex(p, poly.edge_midpoint(0))]].area += poly.area();
        } else {
            const double share = poly.area() / static_cast<double>(assigned.size());
            for (int site : assigned) vd.cells[site].area += share;
        }
    }
    vd.total_area = 0.0;
    for (const VoronoiCell& c : vd.cells) vd.total_area += c.area;

    // --- junctions: vertices seeing >= 3 labels nearby, clustered ---
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    std::vector<char> witness(mesh.num_vertices(), 0);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        std::set<int> nearby = {ms.label[v]};
        for (int k = off[v]; k < off[v + 1]; ++k) nearby.insert(ms.label[tgt[k]]);
        witness[v] = nearby.size() >= 3;
    }
    std::vector<std::vector<int>> junction_clusters;
    {
        UnionFind uf(mesh.num_vertices());
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (witness[v])
                for (int k = off[v]; k < off[v + 1]; ++k)
                    if (witness[tgt[k]]) uf.unite(v, tgt[k]);
        std::map<int, std::vector<int>> by_root;
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (witness[v]) by_root[uf.find(v)].push_back(v);
        for (auto& [root, vs] : by_root) junction_clusters.push_back(std::move(vs));
        vd.junction_count = static_cast<int>(junction_clusters.size());
    }
    // representative vertices per junction: witness clusters grow thin tails
    // along the arcs wherever a third cell comes close, so the best-localized
    // points are the cone vertices inside the cluster (the junction sits on
    // them exactly when three cells meet at a cone point) or, failing that,
    // the vertices where the distances to the meeting sites agree best
    std::vector<std::vector<double>> site_dist(sites.size());
    auto site_distances = [&](int idx) -> const std::vector<double>& {
        if (site_dist[idx].empty()) site_dist[idx] = distances_from(mesh, sites[idx]);
        return site_dist[idx];
    };
    std::set<int> cone_set(mesh.cone_vertex_ids().begin(), mesh.cone_vertex_ids().end());
    std::vector<std::vector<int>> cluster_reps(junction_clusters.size());
    for (std::size_t j = 0; j < junction_clusters.size(); ++j) {
        const auto& cluster = junction_clusters[j];
        for (int v : cluster)
            if (cone_set.count(v)) cluster_reps[j].push_back(v);
        if (!cluster_reps[j].empty()) continue;
        std::set<int> meeting;
        for (int v : cluster) {
            meeting.insert(ms.label[v]);
            for (int k = off[v]; k < off[v + 1]; ++k) meeting.insert(ms.label[tgt[k]]);
        }
        double best = kInf;
        int best_v = cluster.front();
        for (int v : cluster) {
            double lo = kInf, hi = -kInf;
            for (int lbl : meeting) {
                lo = std::min(lo, site_distances(lbl)[v]);
                hi = std::max(hi, site_distances(lbl)[v]);
            }
            if (hi - lo < best) {
                best = hi - lo;
                best_v = v;
            }
        }
        cluster_reps[j].push_back(best_v);
    }

    // --- arcs: connected groups of label-changing edges, split at junctions ---
    std::vector<int> cut;  // mesh edge ids
    for (std::size_t e = 0; e < mesh.edges().size(); ++e) {
        int u = mesh.copies()[mesh.edges()[e].copy_a].base;
        int v = mesh.copies()[mesh.edges()[e].copy_b].base;
        if (ms.label[u] != ms.label[v]) cut.push_back(static_cast<int>(e));
    }
    {
        std::map<std::pair<int, int>, std::vector<int>> by_pair;
        for (int e : cut) {
            int u = mesh.copies()[mesh.edges()[e].copy_a].base;
            int v = mesh.copies()[mesh.edges()[e].copy_b].base;
            // skip edges fully inside a junction cluster; they belong to no arc
            if (witness[u] && witness[v]) continue;
            int a = std::min(ms.label[u], ms.label[v]);
            int b = std::max(ms.label[u], ms.label[v]);
            by_pair[{a, b}].push_back(e);
        }
        for (const auto& [pair, edges] : by_pair) {
            UnionFind uf(static_cast<int>(edges.size()));
            std::map<int, int> seen_at;  // non-junction vertex -> edge position
            for (std::size_t i = 0; i < edges.size(); ++i) {
                for (int c : {mesh.edges()[edges[i]].copy_a, mesh.edges()[edges[i]].copy_b}) {
                    int v = mesh.copies()[c].base;
                    if (witness[v]) continue;
                    auto [it, inserted] = seen_at.try_emplace(v, static_cast<int>(i));
                    if (!inserted) uf.unite(static_cast<int>(i), it->second);
                }
            }
            // also join cut edges whose endpoints are joined by a short mesh
            // edge: label noise on the equidistant locus must not split one
            // arc, while distinct arcs stay farther apart than 1.5h
            const auto& wts = mesh.adj_weights();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                for (int c : {mesh.edges()[edges[i]].copy_a, mesh.edges()[edges[i]].copy_b}) {
                    int v = mesh.copies()[c].base;
                    if (witness[v]) continue;
                    for (int k = off[v]; k < off[v + 1]; ++k) {
                        if (wts[k] > 1.5 * mesh.h()) continue;
                        auto it = seen_at.find(tgt[k]);
                        if (it != seen_at.end()) uf.unite(static_cast<int>(i), it->second);
                    }
                }
            }
            std::map<int, std::vector<int>> comps;
            for (std::size_t i = 0; i < edges.size(); ++i)
                comps[uf.find(static_cast<int>(i))].push_back(edges[i]);
            for (auto& [root, es] : comps) {
                VoronoiArc arc;
                arc.site_a = pair.first;
                arc.site_b = pair.second;
                arc.cut_edges = std::move(es);
                vd.arcs.push_back(std::move(arc));
            }
        }
    }

    // --- center angles: gap partition of the circle around each site ---
    // distance to the nearest junction, to trim every angular cloud evenly
    std::vector<double> junction_dist(mesh.num_vertices(), kInf);
    {
        struct Item {
            double d;
            int v;
            bool operator>(const Item& o) const { return d > o.d; }
        };
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (witness[v]) {
                junction_dist[v] = 0.0;
                heap.push({0.0, v});
            }
        const auto& wts = mesh.adj_weights();
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > junction_dist[v]) continue;
            for (int k = off[v]; k < off[v + 1]; ++k)
                if (d + wts[k] < junction_dist[tgt[k]]) {
                    junction_dist[tgt[k]] = d + wts[k];
                    heap.push({d + wts[k], tgt[k]});
                }
        }
    }
    const double trim = 3.0 * mesh.h();
    std::vector<std::vector<int>> copies_by_base(mesh.num_vertices());
    for (std::size_t c = 0; c < mesh.copies().size(); ++c)
        copies_by_base[mesh.copies()[c].base].push_back(static_cast<int>(c));
    for (std::size_t i = 0; i < sites.size(); ++i) {
        SiteChart chart = build_site_chart(mesh, sites[i]);
        std::map<int, std::vector<int>> site_copies_in;  // polygon -> site copy ids
        for (const auto& [copy, sector] : chart.by_copy)
            site_copies_in[mesh.copies()[copy].polygon].push_back(copy);
        // direction of the geodesic from the site to u: when u shares a chart
        // with the site the straight chart segment is exact
        auto chart_angles = [&](int u) {
            std::vector<double> out;
            for (int cu : copies_by_base[u]) {
                auto it = site_copies_in.find(mesh.copies()[cu].polygon);
                if (it == site_copies_in.end()) continue;
                int c_site = it->second[0];
                for (int cs : it->second)
                    if (dist(mesh.copies()[cs].pos, mesh.copies()[cu].pos) <
                        dist(mesh.copies()[c_site].pos, mesh.copies()[cu].pos))
                        c_site = cs;
                Vec2 dir = mesh.copies()[cu].pos - mesh.copies()[c_site].pos;
                out.push_back(chart.angle_of(c_site, dir));
            }
            return out;
        };
        auto direct_angle = [&](int u) -> std::optional<double> {
            auto angs = chart_angles(u);
            if (angs.empty()) return std::nullopt;
            return angs.front();
        };
        const double T = chart.total_angle;
        // mean direction on the circle of circumference T
        auto circular_mean = [&](const std::vector<double>& angs) -> std::optional<double> {
            if (angs.empty()) return std::nullopt;
            double cx = 0.0, cy = 0.0;
            for (double a : angs) {
                double t = 2.0 * kPi * a / T;
                cx += std::cos(t);
                cy += std::sin(t);
            }
            if (std::hypot(cx, cy) < 1e-9) return std::nullopt;
            double a = T * std::atan2(cy, cx) / (2.0 * kPi);
            return a - std::floor(a / T) * T;
        };
        // boundary vertices of cell i per incident arc
        std::vector<std::pair<double, int>> points;  // (angle, local arc idx)
        std::vector<int> incident;
        for (std::size_t a = 0; a < vd.arcs.size(); ++a) {
            if (vd.arcs[a].site_a != static_cast<int>(i) && vd.arcs[a].site_b != static_cast<int>(i))
                continue;
            int local = static_cast<int>(incident.size());
            incident.push_back(static_cast<int>(a));
            // both endpoints of tight crossings straddle the equidistant
            // locus within 1.5h, giving a symmetric angular sample of the arc;
            // long shortcuts reach far from the locus and would skew it
            std::set<int> cell_side, untrimmed;
            for (int e : vd.arcs[a].cut_edges) {
                if (mesh.edges()[e].weight > 1.5 * mesh.h()) continue;
                for (int c : {mesh.edges()[e].copy_a, mesh.edges()[e].copy_b}) {
                    int v = mesh.copies()[c].base;
                    if (v == sites[i]) continue;
                    untrimmed.insert(v);
                    if (junction_dist[v] >= trim) cell_side.insert(v);
                }
            }
            if (cell_side.empty()) cell_side = untrimmed;  // very short arc
            for (int u : cell_side) {
                if (auto ang = direct_angle(u)) {
                    points.emplace_back(*ang, local);
                    continue;
                }
                // fallback: first edge of the shortest-path tree toward u
                // (only meaningful when the tree path actually ends at site i)
                if (ms.label[u] != static_cast<int>(i)) continue;
                int v = u;
                while (ms.parent_vertex[v] != sites[i] && ms.parent_vertex[v] != -1)
                    v = ms.parent_vertex[v];
                if (ms.parent_vertex[v] == -1) continue;
                const MeshEdge& first = mesh.edges()[mesh.adj_edge_ids()[ms.parent_entry[v]]];
                int c_site = mesh.copies()[first.copy_a].base == sites[i] ? first.copy_a
                                                                          : first.copy_b;
                int c_out = c_site == first.copy_a ? first.copy_b : first.copy_a;
                Vec2 dir = mesh.copies()[c_out].pos - mesh.copies()[c_site].pos;
                points.emplace_back(chart.angle_of(c_site, dir), local);
            }
        }
        VoronoiCell& cell = vd.cells[i];
        cell.side_count = static_cast<int>(incident.size());
        cell.center_angles.assign(incident.size(), 0.0);
        if (points.empty()) continue;
        std::sort(points.begin(), points.end());
        for (std::size_t j = 0; j < points.size(); ++j) {
            std::size_t next = (j + 1) % points.size();
            double gap = points[next].first - points[j].first;
            if (next == 0) gap += T;
            cell.center_angles[points[j].second] += 0.5 * gap;
            cell.center_angles[points[next].second] += 0.5 * gap;
        }

        // junction refinement: label noise along the equidistant loci skews
        // the angular clouds, but junctions are tightly localized, so when the
        // cell's boundary arcs run between junctions the gaps between
        // consecutive junction directions give the subtended angles directly
        std::vector<double> jang;
        bool jok = true;
        for (std::size_t jc = 0; jc < junction_clusters.size(); ++jc) {
            bool adjacent = false;
            for (int v : junction_clusters[jc]) {
                if (ms.label[v] == static_cast<int>(i)) adjacent = true;
                for (int k = off[v]; k < off[v + 1]; ++k)
                    if (ms.label[tgt[k]] == static_cast<int>(i)) adjacent = true;
            }
            if (!adjacent) continue;
            // a junction on an identified point can bound the cell at several
            // angular positions, one per copy of its representative
            std::vector<double> angs;
            for (int v : cluster_reps[jc])
                for (double a : chart_angles(v)) angs.push_back(a);
            if (angs.empty()) {
                jok = false;
                break;
            }
            std::sort(angs.begin(), angs.end());
            const double tol = 1e-6;
            std::vector<double> distinct;
            for (double a : angs)
                if (distinct.empty() || a - distinct.back() > tol) distinct.push_back(a);
            if (distinct.size() > 1 && T - distinct.back() + distinct.front() <= tol)
                distinct.pop_back();  // wraps onto the first position
            for (double a : distinct) jang.push_back(a);
        }
        if (jok && static_cast<int>(jang.size()) == cell.side_count && cell.side_count >= 2) {
            std::sort(jang.begin(), jang.end());
            std::vector<int> gap_owner(jang.size(), -1);
            bool bijective = true;
            for (int local = 0; local < cell.side_count && bijective; ++local) {
                std::vector<double> angs;
                for (const auto& [a, l] : points)
                    if (l == local) angs.push_back(a);
                auto m = circular_mean(angs);
                if (!m) {
                    bijective = false;
                    break;
                }
                int j = static_cast<int>(std::upper_bound(jang.begin(), jang.end(), *m) -
                                         jang.begin()) -
                        1;
                if (j < 0) j = static_cast<int>(jang.size()) - 1;  // wraps past zero
                if (gap_owner[j] != -1)
                    bijective = false;
                else
                    gap_owner[j] = local;
            }
            if (bijective) {
                for (std::size_t j = 0; j < jang.size(); ++j) {
                    double g = jang[(j + 1) % jang.size()] - jang[j];
                    if (g <= 0) g += T;
                    cell.center_angles[gap_owner[j]] = g;
                }
            }
        }
    }

    // --- quotient stats through the involution, when it can see every arc ---
    if (involution) {
        const std::vector<int>& J = *involution;
        auto domain_set = [&](const std::vector<int>& vs) {
            std::set<int> out;
            for (int v : vs)
                if (v >= 0 && v < static_cast<int>(J.size()) && J[v] != -1) out.insert(v);
            return out;
        };
        auto arc_vertices = [&](const VoronoiArc& a) {
            std::vector<int> vs;
            for (int e : a.cut_edges) {
                vs.push_back(mesh.copies()[mesh.edges()[e].copy_a].base);
                vs.push_back(mesh.copies()[mesh.edges()[e].copy_b].base);
            }
            return vs;
        };
        bool ok = true;
        std::vector<std::set<int>> arc_dom(vd.arcs.size());
        for (std::size_t a = 0; a < vd.arcs.size(); ++a) {
            arc_dom[a] = domain_set(arc_vertices(vd.arcs[a]));
            if (arc_dom[a].empty()) ok = false;
        }
        std::vector<int> arc_image(vd.arcs.size(), -1);
        if (ok) {
            for (std::size_t a = 0; a < vd.arcs.size() && ok; ++a) {
                std::set<int> img;
                for (int v : arc_dom[a]) img.insert(J[v]);
                int best = -1;
                std::size_t best_overlap = 0;
                for (std::size_t b = 0; b < vd.arcs.size(); ++b) {
                    std::vector<int> inter;
                    std::set_intersection(img.begin(), img.end(), arc_dom[b].begin(),
                                          arc_dom[b].end(), std::back_inserter(inter));
                    if (inter.size() > best_overlap) {
                        best_overlap = inter.size();
                        best = static_cast<int>(b);
                    }
                }
                if (best < 0) ok = false;
                arc_image[a] = best;
            }
            for (std::size_t a = 0; a < vd.arcs.size() && ok; ++a)
                if (arc_image[arc_image[a]] != static_cast<int>(a)) ok = false;
        }
        // site images: common site of the images of each cell's incident arcs
        std::vector<int> site_image(sites.size(), -1);
        if (ok) {
            for (std::size_t i = 0; i < sites.size() && ok; ++i) {
                std::set<int> candidates = {};
                bool first = true;
                for (std::size_t a = 0; a < vd.arcs.size(); ++a) {
                    if (vd.arcs[a].site_a != static_cast<int>(i) &&
                        vd.arcs[a].site_b != static_cast<int>(i))
                        continue;
                    const VoronoiArc& img = vd.arcs[arc_image[a]];
                    std::set<int> ends = {img.site_a, img.site_b};
                    if (first) {
                        candidates = ends;
                        first = false;
                    } else {
                        std::set<int> keep;
                        std::set_intersection(candidates.begin(), candidates.end(), ends.begin(),
                                              ends.end(), std::inserter(keep, keep.begin()));
                        candidates = keep;
                    }
                }
                if (candidates.size() != 1)
                    ok = false;
                else
                    site_image[i] = *candidates.begin();
            }
        }
        // junction images via domain overlap of witness clusters
        int junction_orbits = 0;
        if (ok && vd.junction_count > 0) {
            std::vector<std::set<int>> dom;
            for (const auto& vs : junction_clusters) dom.push_back(domain_set(vs));
            std::vector<int> image(dom.size(), -1);
            for (std::size_t a = 0; a < dom.size() && ok; ++a) {
                if (dom[a].empty()) {
                    ok = false;
                    break;
                }
                std::set<int> img;
                for (int v : dom[a]) img.insert(J[v]);
                std::size_t best_overlap = 0;
                for (std::size_t b = 0; b < dom.size(); ++b) {
                    std::vector<int> inter;
                    std::set_intersection(img.begin(), img.end(), dom[b].begin(), dom[b].end(),
                                          std::back_inserter(inter));
                    if (inter.size() > best_overlap) {
                        best_overlap = inter.size();
                        image[a] = static_cast<int>(b);
                    }
                }
                if (image[a] < 0) ok = false;
            }
            for (std::size_t a = 0; a < dom.size() && ok; ++a)
                if (image[image[a]] != static_cast<int>(a)) ok = false;
            if (ok) {
                UnionFind orbits(static_cast<int>(dom.size()));
                for (std::size_t a = 0; a < dom.size(); ++a)
                    orbits.unite(static_cast<int>(a), image[a]);
                std::set<int> roots;
                for (std::size_t a = 0; a < dom.size(); ++a)
                    roots.insert(orbits.find(static_cast<int>(a)));
                junction_orbits = static_cast<int>(roots.size());
            }
        }
        if (ok) {
            QuotientStats q;
            {
                UnionFind orbits(static_cast<int>(sites.size()));
                for (std::size_t i = 0; i < sites.size(); ++i)
                    orbits.unite(static_cast<int>(i), site_image[i]);
                std::set<int> roots;
                for (std::size_t i = 0; i < sites.size(); ++i)
                    roots.insert(orbits.find(static_cast<int>(i)));
                q.vertices = static_cast<int>(roots.size());
            }
            {
                UnionFind orbits(static_cast<int>(vd.arcs.size()));
                for (std::size_t a = 0; a < vd.arcs.size(); ++a)
                    orbits.unite(static_cast<int>(a), arc_image[a]);
                std::set<int> roots;
                for (std::size_t a = 0; a < vd.arcs.size(); ++a)
                    roots.insert(orbits.find(static_cast<int>(a)));
                q.edges = static_cast<int>(roots.size());
            }
            q.faces = junction_orbits;
            vd.quotient = q;
        }
    }
    return vd;
}

int euler_edge_bound(int num_sites) {
    if (num_sites < 3) throw InconsistentInputs("euler_edge_bound needs at least 3 sites");
    return 3 * num_sites - 6;
}

double cell_area_lower_bound(double sys, const std::vector<double>& center_angles) {
    if (sys <= 0) throw InconsistentInputs("systole must be positive");
    double total = 0.0;
    for (double theta : center_angles) {
        if (theta <= 0 || theta >= kPi)
            throw AngleOutOfRange("center angle " + std::to_string(theta) +
                                  " outside (0, pi); the triangle bound does not apply");
        total += (sys / 4.0) * (sys / 4.0) * std::tan(theta / 2.0);
    }
    return total;
}

double jensen_area_bound(double sys) {
    if (sys <= 0) throw InconsistentInputs("systole must be positive");
    return 3.0 * std::tan(kPi / 8.0) * sys * sys;
}

double hyperelliptic_disk_bound(int genus) {
    if (genus < 2) throw InconsistentInputs("disk bound needs genus >= 2");
    return 8.0 / ((genus + 1) * kPi);
}

double pu_displacement_bound(double delta) {
    if (delta < 0) throw InconsistentInputs("displacement must be nonnegative");
    return (12.0 / kPi) * delta * delta;
}

const BoundEntry& BoundReport::entry(const std::string& name) const {
    for (const BoundEntry& e : entries)
        if (e.name == name) return e;
    throw InconsistentInputs("no bound named " + name);
}

bool BoundReport::all_satisfied() const {
    for (const BoundEntry& e : entries)
        if (e.applicable && !e.satisfied) return false;
    return true;
}

BoundReport bound_report(const ConeSurface& surface, const SystoleEstimate& sys_estimate,
                         const VoronoiDecomposition& vd, const DisplacementResult& delta) {
    const ConeSurface& mesh_surface = vd.mesh->surface();
    if (mesh_surface.num_polygons() != surface.num_polygons() ||
        mesh_surface.topology().genus != surface.topology().genus ||
        std::abs(mesh_surface.total_area() - surface.total_area()) >
            1e-9 * surface.total_area())
        throw InconsistentInputs("voronoi decomposition comes from a different surface");

    BoundReport r;
    r.sys = sys_estimate.length;
    r.area = surface.total_area();
    r.systolic_ratio = r.sys * r.sys / r.area;
    r.delta = delta.delta;
    for (const VoronoiCell& c : vd.cells) r.max_cell_radius = std::max(r.max_cell_radius, c.max_radius);
    r.cell_radius_ok = r.max_cell_radius < 0.5 * r.sys + 1e-12;

    const int genus = surface.topology().genus;
    const bool cat0 = is_cat0(surface).ok;
    // sys is a mesh overestimate; SR inherits up to twice its relative band
    const double sr_tol = r.systolic_ratio * (2.0 * sys_estimate.error_bound + 1e-12);

    auto add_upper = [&](const std::string& name, const std::string& stmt, double bound,
                         double achieved, bool applicable, double tol) {
        BoundEntry e{name, stmt, bound, achieved, applicable, false, bound - achieved, tol};
        e.satisfied = applicable && achieved <= bound + tol;
        r.entries.push_back(std::move(e));
    };
    auto add_lower = [&](const std::string& name, const std::string& stmt, double bound,
                         double achieved, bool applicable, double tol) {
        BoundEntry e{name, stmt, bound, achieved, applicable, false, achieved - bound, tol};
        e.satisfied = applicable && achieved >= bound - tol;
        r.entries.push_back(std::move(e));
    };

    add_upper("sr_flat_octagon", "SR <= (1/3)cot(pi/8) for genus-2 CAT(0)",
              (std::sqrt(2.0) + 1.0) / 3.0, r.systolic_ratio, genus == 2 && cat0, sr_tol);
    add_upper("sr_disk_packing", "SR <= 8/((g+1)pi) for hyperelliptic CAT(0)",
              genus >= 2 ? hyperelliptic_disk_bound(genus) : 0.0, r.systolic_ratio,
              genus == 2 && cat0, sr_tol);
    add_upper("sr_pi_third", "SR <= pi/3 for genus-2 CAT(0)", kPi / 3.0, r.systolic_ratio,
              genus == 2 && cat0, sr_tol);
    add_upper("sr_bavard", "SR <= pi/2^(3/2) for genus-2 CAT(0)",
              kPi / (2.0 * std::sqrt(2.0)), r.systolic_ratio, genus == 2 && cat0, sr_tol);
    add_lower("area_vs_jensen", "area >= 3 tan(pi/8) sys^2 for genus-2 CAT(0)",
              jensen_area_bound(std::max(r.sys, 1e-300)), r.area, genus == 2 && cat0,
              2.0 * r.area * sys_estimate.error_bound);

    const bool has_delta = delta.witness >= 0;
    add_lower("area_vs_displacement", "area >= (12/pi) delta^2 for genus-2 CAT(0) with J",
              pu_displacement_bound(std::max(r.delta, 0.0)), r.area,
              genus == 2 && cat0 && has_delta,
              2.0 * r.area * relative_error_band(vd.mesh->h(), std::max(r.delta, 1e-12)));
    add_lower("two_delta_vs_sys", "2 delta >= sys for genus-2 CAT(0) with J", r.sys,
              2.0 * r.delta, genus == 2 && cat0 && has_delta,
              r.sys * sys_estimate.error_bound);
    return r;
}

}  // namespace flatsurf
