#include "flatsurf/homology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

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
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

/// Union-find over mesh copies carrying the class offset to the parent.
struct OffsetUnionFind {
    std::vector<int> parent;
    std::vector<std::uint32_t> rel;  // offset(v) xor offset(parent[v])
    explicit OffsetUnionFind(int n) : parent(n), rel(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, std::uint32_t> find(int v) {
        std::uint32_t off = 0;
        int root = v;
        while (parent[root] != root) {
            off ^= rel[root];
            root = parent[root];
        }
        // path compression with offset accumulation
        std::uint32_t walk = off;
        while (parent[v] != root) {
            int next = parent[v];
            std::uint32_t r = rel[v];
            parent[v] = root;
            rel[v] = walk;
            walk ^= r;
            v = next;
        }
        return {root, off};
    }
    /// Enforce offset(a) xor offset(b) == label; false on inconsistency.
    bool unite(int a, int b, std::uint32_t label) {
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) return (oa ^ ob) == label;
        parent[ra] = rb;
        rel[ra] = oa ^ ob ^ label;
        return true;
    }
};

/// Deck labels per gluing: a basis of 2g gluings gets the unit bitmasks, the
/// rest is forced to zero by a tree-cotree decomposition. Labels on the dual
/// spanning tree (polygon adjacency) are zero; labels on a primal spanning
/// tree (vertex classes connected by the remaining gluings) are solved from
/// the condition that the labels crossed around each vertex class sum to zero.
std::vector<std::uint32_t> solve_gluing_labels(const ConeSurface& s) {
    const int ng = static_cast<int>(s.gluings().size());
    const int g2 = 2 * s.topology().genus;

    // dual spanning tree over polygons
    std::vector<char> in_dual_tree(ng, 0);
    {
        UnionFind uf(s.num_polygons());
        for (int g = 0; g < ng; ++g)
            if (uf.unite(s.gluings()[g].a.polygon, s.gluings()[g].b.polygon)) in_dual_tree[g] = 1;
    }

    // endpoints of a gluing as vertex classes (corners of side a)
    auto endpoints = [&](int g) {
        const EdgeRef& a = s.gluings()[g].a;
        int u = s.cone_point_of({a.polygon, a.edge});
        int v = s.cone_point_of({a.polygon, s.polygon(a.polygon).mod(a.edge + 1)});
        return std::pair{u, v};
    };

    // primal spanning tree over vertex classes, using non-dual-tree gluings
    std::vector<char> in_primal_tree(ng, 0);
    {
        UnionFind uf(static_cast<int>(s.cone_points().size()));
        for (int g = 0; g < ng; ++g) {
            if (in_dual_tree[g]) continue;
            auto [u, v] = endpoints(g);
            if (u != v && uf.unite(u, v)) in_primal_tree[g] = 1;
        }
    }

    std::vector<std::uint32_t> label(ng, 0);
    std::vector<char> known(ng, 0);
    int basis = 0;
    for (int g = 0; g < ng; ++g) {
        if (in_dual_tree[g]) {
            known[g] = 1;  // label 0
        } else if (!in_primal_tree[g]) {
            label[g] = 1u << basis++;
            known[g] = 1;
        }
    }
    if (basis != g2)
        throw ConstructionInvariantViolated("tree-cotree decomposition left " +
                                            std::to_string(basis) + " basis gluings, expected " +
                                            std::to_string(g2));

    // peel leaves of the primal tree; at a leaf class exactly one crossed
    // gluing is unknown and the vertex condition determines it
    const auto& cps = s.cone_points();
    std::vector<int> unknown_deg(cps.size(), 0);
    for (int g = 0; g < ng; ++g) {
        if (known[g]) continue;
        auto [u, v] = endpoints(g);
        ++unknown_deg[u];
        ++unknown_deg[v];
    }
    std::vector<int> leaves;
    for (std::size_t v = 0; v < cps.size(); ++v)
        if (unknown_deg[v] == 1) leaves.push_back(static_cast<int>(v));
    while (!leaves.empty()) {
        int v = leaves.back();
        leaves.pop_back();
        if (unknown_deg[v] != 1) continue;
        std::uint32_t acc = 0;
        int pending = -1;
        for (int g : cps[v].crossed_gluings) {
            if (known[g])
                acc ^= label[g];
            else
                pending = g;
        }
        label[pending] = acc;
        known[pending] = 1;
        auto [a, b] = endpoints(pending);
        if (--unknown_deg[a] == 1) leaves.push_back(a);
        if (--unknown_deg[b] == 1) leaves.push_back(b);
    }
    for (int g = 0; g < ng; ++g)
        if (!known[g]) throw ConstructionInvariantViolated("gluing label system not triangular");

    // every vertex condition must now hold exactly
    for (const ConePoint& cp : cps) {
        std::uint32_t acc = 0;
        for (int g : cp.crossed_gluings) acc ^= label[g];
        if (acc != 0)
            throw ConstructionInvariantViolated("gluing labels violate a vertex condition");
    }
    return label;
}

int gf2_rank(std::vector<std::uint32_t> rows) {
    int rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot] >> bit & 1u)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != static_cast<std::size_t>(rank) && (rows[r] >> bit & 1u)) rows[r] ^= rows[rank];
        if (++rank == static_cast<int>(rows.size())) break;
    }
    return rank;
}

struct HeapItem {
    double dist;
    int state;
    bool operator>(const HeapItem& o) const { return dist > o.dist; }
};

/// Dijkstra on the cover from (source, class 0). Scratch buffers are reused
/// across calls; `cutoff` prunes states that cannot beat a known bound.
void cover_dijkstra(const HomologyCover& cover, int source, double cutoff,
                    std::vector<double>& dist, std::vector<int>& parent) {
    const MeshGraph& mesh = *cover.mesh;
    const int nb = mesh.num_vertices();
    dist.assign(cover.num_states(), std::numeric_limits<double>::infinity());
    parent.assign(cover.num_states(), -1);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[source] = 0.0;  // class 0
    heap.push({0.0, source});
    const auto& off = mesh.adj_offsets();
    const auto& tgt = mesh.adj_targets();
    const auto& wts = mesh.adj_weights();
    while (!heap.empty()) {
        auto [d, st] = heap.top();
        heap.pop();
        if (d > dist[st] || d > cutoff) continue;
        int v = st % nb;
        int cls = st / nb;
        for (int k = off[v]; k < off[v + 1]; ++k) {
            double nd = d + wts[k];
            int nst = (cls ^ static_cast<int>(cover.adj_labels[k])) * nb + tgt[k];
            if (nd < dist[nst]) {
                dist[nst] = nd;
                parent[nst] = st;
                heap.push({nd, nst});
            }
        }
    }
}

}  // namespace

HomologyCover build_homology_cover(const MeshGraph& mesh) {
    const ConeSurface& s = mesh.surface();
    const int genus = s.topology().genus;
    if (genus == 0)
        throw InconsistentInputs("a genus-0 surface has no essential cycles");
    if (genus > 8)
        throw InconsistentInputs("homology cover limited to genus <= 8");

    HomologyCover cover;
    cover.mesh = std::make_shared<MeshGraph>(mesh);
    cover.genus = genus;
    cover.num_classes = 1 << (2 * genus);
    cover.gluing_labels = solve_gluing_labels(s);

    // re-run the welding with offsets to place every copy in the cover
    OffsetUnionFind uf(static_cast<int>(mesh.copies().size()));
    for (const WeldPair& w : mesh.welds())
        if (!uf.unite(w.copy_a, w.copy_b, cover.gluing_labels[w.gluing]))
            throw ConstructionInvariantViolated("inconsistent weld offsets");
    cover.copy_offsets.resize(mesh.copies().size());
    for (std::size_t c = 0; c < mesh.copies().size(); ++c)
        cover.copy_offsets[c] = uf.find(static_cast<int>(c)).second;

    cover.edge_labels.resize(mesh.edges().size());
    for (std::size_t e = 0; e < mesh.edges().size(); ++e)
        cover.edge_labels[e] =
            cover.copy_offsets[mesh.edges()[e].copy_a] ^ cover.copy_offsets[mesh.edges()[e].copy_b];
    cover.adj_labels.resize(mesh.adj_edge_ids().size());
    for (std::size_t k = 0; k < cover.adj_labels.size(); ++k)
        cover.adj_labels[k] = cover.edge_labels[mesh.adj_edge_ids()[k]];

    // fundamental-cycle classes of the base graph must span (Z/2)^{2g}
    {
        const int nb = mesh.num_vertices();
        std::vector<std::uint32_t> potential(nb, 0);
        std::vector<char> seen(nb, 0);
        std::vector<int> order;
        order.reserve(nb);
        order.push_back(0);
        seen[0] = 1;
        const auto& off = mesh.adj_offsets();
        const auto& tgt = mesh.adj_targets();
        for (std::size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            for (int k = off[v]; k < off[v + 1]; ++k)
                if (!seen[tgt[k]]) {
                    seen[tgt[k]] = 1;
                    potential[tgt[k]] = potential[v] ^ cover.adj_labels[k];
                    order.push_back(tgt[k]);
                }
        }
        std::vector<std::uint32_t> cycles;
        for (std::size_t e = 0; e < mesh.edges().size(); ++e) {
            int u = mesh.copies()[mesh.edges()[e].copy_a].base;
            int v = mesh.copies()[mesh.edges()[e].copy_b].base;
            std::uint32_t c = cover.edge_labels[e] ^ potential[u] ^ potential[v];
            if (c) cycles.push_back(c);
        }
        if (gf2_rank(std::move(cycles)) != 2 * genus)
            throw ConstructionInvariantViolated("mesh cycle classes do not span homology");
    }
    return cover;
}

SystoleEstimate shortest_essential_cycle(const HomologyCover& cover,
                                         const std::vector<int>& sources) {
    const MeshGraph& mesh = *cover.mesh;
    const int nb = mesh.num_vertices();
    SystoleEstimate best;
    best.length = std::numeric_limits<double>::infinity();
    best.h = mesh.h();
    std::vector<double> dist;
    std::vector<int> parent;
    for (int src : sources) {
        cover_dijkstra(cover, src, best.length, dist, parent);
        for (int cls = 1; cls < cover.num_classes; ++cls) {
            int st = cls * nb + src;
            if (dist[st] < best.length) {
                best.length = dist[st];
                best.homology_class = static_cast<std::uint32_t>(cls);
                best.base_vertex = src;
                best.cycle.clear();
                for (int cur = st; cur != -1; cur = parent[cur]) best.cycle.push_back(cur % nb);
                std::reverse(best.cycle.begin(), best.cycle.end());
            }
        }
    }
    if (!std::isfinite(best.length))
        throw InconsistentInputs("no essential cycle found through the given basepoints");
    best.error_bound = relative_error_band(best.h, best.length);
    return best;
}

SystoleEstimate shortest_essential_cycle(const HomologyCover& cover, SampleStrategy strategy) {
    std::vector<int> sources;
    if (strategy == SampleStrategy::ConePoints) {
        sources = cover.mesh->cone_vertex_ids();
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    } else {
        sources.resize(cover.mesh->num_vertices());
        std::iota(sources.begin(), sources.end(), 0);
    }
    return shortest_essential_cycle(cover, sources);
}

std::vector<double> shortest_by_class(const HomologyCover& cover, const std::vector<int>& sources) {
    const int nb = cover.mesh->num_vertices();
    std::vector<double> out(cover.num_classes, std::numeric_limits<double>::infinity());
    out[0] = 0.0;
    std::vector<double> dist;
    std::vector<int> parent;
    for (int src : sources) {
        cover_dijkstra(cover, src, std::numeric_limits<double>::infinity(), dist, parent);
        for (int cls = 1; cls < cover.num_classes; ++cls)
            out[cls] = std::min(out[cls], dist[cls * nb + src]);
    }
    return out;
}

std::uint32_t loop_class(const HomologyCover& cover, const std::vector<LoopSegment>& segments) {
    if (segments.empty()) throw InconsistentInputs("empty loop");
    const MeshGraph& mesh = *cover.mesh;
    std::uint32_t cls = 0;
    std::vector<std::pair<int, int>> ends;  // (start copy, end copy) per segment
    for (const LoopSegment& seg : segments) {
        int a = mesh.nearest_copy(seg.polygon, seg.from);
        int b = mesh.nearest_copy(seg.polygon, seg.to);
        ends.emplace_back(a, b);
        cls ^= cover.copy_offsets[a] ^ cover.copy_offsets[b];
    }
    for (std::size_t i = 0; i < ends.size(); ++i) {
        int tail = ends[i].second;
        int head = ends[(i + 1) % ends.size()].first;
        if (mesh.copies()[tail].base != mesh.copies()[head].base)
            throw InconsistentInputs("loop segments do not join at segment " + std::to_string(i));
    }
    return cls;
}

}  // namespace flatsurf
