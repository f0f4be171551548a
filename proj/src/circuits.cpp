#include "flatsurf/circuits.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatsurf {

std::string to_string(CircuitType t) {
    switch (t) {
        case CircuitType::Face: return "face";
        case CircuitType::Domino: return "domino";
        case CircuitType::Petrie: return "petrie";
        case CircuitType::Other: return "other";
    }
    return "other";
}

namespace {

/// Smaller-region count of cube faces enclosed by the cycle. Faces are joined
/// when they share an edge not on the cycle; a simple closed curve on S^2
/// leaves exactly two groups.
int enclosed_count(const SphereComplex& cube, const std::vector<int>& cycle) {
    const int nf = cube.num_faces();
    std::vector<bool> on_cycle(cube.num_edges(), false);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int e = cube.edge_index(cycle[i], cycle[(i + 1) % cycle.size()]);
        on_cycle[e] = true;
    }
    std::vector<int> comp(nf);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (int e = 0; e < cube.num_edges(); ++e) {
        if (on_cycle[e]) continue;
        auto fs = cube.faces_of_edge(e);
        if (fs.size() == 2) comp[find(fs[0])] = find(fs[1]);
    }
    int c0 = 0;
    for (int f = 0; f < nf; ++f)
        if (find(f) == find(0)) ++c0;
    if (c0 == nf) throw std::logic_error("cycle does not separate the sphere");
    return std::min(c0, nf - c0);
}

CircuitType classify(int length, int enclosed) {
    if (length == 4) return CircuitType::Face;
    if (length == 6 && enclosed == 2) return CircuitType::Domino;
    if (length == 6 && enclosed == 3) return CircuitType::Petrie;
    return CircuitType::Other;
}

}  // namespace

std::vector<CircuitCertificate> enumerate_circuits(const SphereComplex& cubical, int max_len) {
    if (max_len < 3 || max_len > 12)
        throw std::invalid_argument("max_len must be in [3, 12]");
    const int n = cubical.num_vertices();
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : cubical.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    // Each cycle is produced exactly once: the start is its smallest vertex
    // and the second vertex is smaller than the last (kills the reflection).
    std::vector<CircuitCertificate> out;
    std::vector<int> path;
    std::vector<bool> used(n, false);

    auto dfs = [&](auto&& self, int v) -> void {
        for (int w : adj[v]) {
            if (w == path.front()) {
                if (path.size() >= 3 && path[1] < path.back()) {
                    CircuitCertificate c;
                    c.vertex_cycle = path;
                    c.length = static_cast<int>(path.size());
                    c.enclosed_ramification_count = enclosed_count(cubical, path);
                    c.liftable = c.enclosed_ramification_count % 2 == 0;
                    c.circuit_type = classify(c.length, c.enclosed_ramification_count);
                    out.push_back(std::move(c));
                }
                continue;
            }
            if (used[w] || w < path.front()) continue;
            if (static_cast<int>(path.size()) >= max_len) continue;
            used[w] = true;
            path.push_back(w);
            self(self, w);
            path.pop_back();
            used[w] = false;
        }
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        used[s] = true;
        dfs(dfs, s);
        used[s] = false;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.vertex_cycle < b.vertex_cycle;
    });
    return out;
}

std::string circuits_to_csv(const std::vector<CircuitCertificate>& circuits) {
    std::ostringstream os;
    os << "length,type,enclosed,liftable\n";
    for (const auto& c : circuits) {
        os << c.length << "," << to_string(c.circuit_type) << ","
           << c.enclosed_ramification_count << "," << (c.liftable ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace flatsurf
