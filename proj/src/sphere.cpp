#include "flatsurf/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flatsurf {

int SphereComplex::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == std::make_pair(u, v)) return static_cast<int>(i);
    return -1;
}

std::vector<int> SphereComplex::faces_of_edge(int e) const {
    std::vector<int> out;
    auto [u, v] = edges[e];
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& cyc = faces[f];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            if ((a == u && b == v) || (a == v && b == u)) {
                out.push_back(static_cast<int>(f));
                break;
            }
        }
    }
    return out;
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

/// Order the given vertices CCW (seen from outside) around the face whose
/// outward normal is `normal`.
std::vector<int> order_face(const std::vector<Vec3>& verts, std::vector<int> idx, Vec3 normal) {
    Vec3 center{0, 0, 0};
    for (int i : idx) {
        center.x += verts[i].x;
        center.y += verts[i].y;
        center.z += verts[i].z;
    }
    double inv = 1.0 / static_cast<double>(idx.size());
    center = {center.x * inv, center.y * inv, center.z * inv};
    // in-plane frame
    Vec3 u = sub(verts[idx[0]], center);
    Vec3 v = cross(normal, u);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        Vec3 pa = sub(verts[a], center), pb = sub(verts[b], center);
        return std::atan2(dot(pa, v), dot(pa, u)) < std::atan2(dot(pb, v), dot(pb, u));
    });
    return idx;
}

void collect_edges(SphereComplex& c) {
    for (const auto& f : c.faces) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            int u = f[i], v = f[(i + 1) % f.size()];
            if (u > v) std::swap(u, v);
            if (c.edge_index(u, v) == -1) c.edges.emplace_back(u, v);
        }
    }
    std::sort(c.edges.begin(), c.edges.end());
}

}  // namespace

SpherePair sphere_complexes() {
    SpherePair out;

    // octahedron: vertices +-e_i, faces one per octant
    SphereComplex& oct = out.octahedral;
    oct.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                std::vector<int> f = {sx > 0 ? 0 : 1, sy > 0 ? 2 : 3, sz > 0 ? 4 : 5};
                Vec3 n{static_cast<double>(sx), static_cast<double>(sy), static_cast<double>(sz)};
                oct.faces.push_back(order_face(oct.vertices, f, n));
            }
    collect_edges(oct);
    for (int i = 0; i < 6; ++i) oct.ramification_vertices.push_back(i);

    // cube: vertices (+-1,+-1,+-1)/sqrt(3), one face per octahedron vertex
    SphereComplex& cube = out.cubical;
    const double s = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < 8; ++i)
        cube.vertices.push_back({(i & 1 ? s : -s), (i & 2 ? s : -s), (i & 4 ? s : -s)});
    cube.dual_of_partner = true;
    for (int ov = 0; ov < 6; ++ov) {
        const Vec3 n = oct.vertices[ov];
        std::vector<int> f;
        for (int i = 0; i < 8; ++i)
            if (dot(cube.vertices[i], n) > 0) f.push_back(i);
        cube.faces.push_back(order_face(cube.vertices, f, n));
        out.dual_face_of_vertex.push_back(ov);
    }
    collect_edges(cube);

    if (oct.euler_characteristic() != 2 || cube.euler_characteristic() != 2 ||
        oct.num_edges() != 12 || cube.num_edges() != 12)
        throw std::logic_error("sphere complex construction broke");
    return out;
}

bool solve_gf2(std::vector<std::uint32_t> rows, std::vector<int> rhs, int num_vars,
               std::vector<int>& solution) {
    const int m = static_cast<int>(rows.size());
    std::vector<int> pivot_col(m, -1);
    int r = 0;
    for (int c = 0; c < num_vars && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (rows[i] >> c & 1u) { pr = i; break; }
        if (pr == -1) continue;
        std::swap(rows[r], rows[pr]);
        std::swap(rhs[r], rhs[pr]);
        for (int i = 0; i < m; ++i) {
            if (i != r && (rows[i] >> c & 1u)) {
                rows[i] ^= rows[r];
                rhs[i] ^= rhs[r];
            }
        }
        pivot_col[r] = c;
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (rhs[i]) return false;
    solution.assign(num_vars, 0);
    for (int i = 0; i < r; ++i) solution[pivot_col[i]] = rhs[i];
    return true;
}

}  // namespace flatsurf
