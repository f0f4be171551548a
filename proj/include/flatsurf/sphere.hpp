#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace flatsurf {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

/// Polyhedral subdivision of S^2. Faces are vertex cycles oriented CCW as
/// seen from outside; edges are sorted vertex pairs.
struct SphereComplex {
    std::vector<Vec3> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> faces;
    std::vector<int> ramification_vertices;  // marked branch points (may be empty)
    bool dual_of_partner = false;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

    int edge_index(int u, int v) const;
    /// The (at most two) faces containing edge e.
    std::vector<int> faces_of_edge(int e) const;
};

struct SpherePair {
    SphereComplex octahedral;  // V=6, E=12, F=8; vertices are ramification points
    SphereComplex cubical;     // V=8, E=12, F=6; dual to the octahedral one
    /// octahedron vertex i <-> cube face dual_face_of_vertex[i]
    std::vector<int> dual_face_of_vertex;
};

/// The regular octahedral triangulation of S^2 and its dual cubical
/// subdivision, with the six branch points marked on the octahedron vertices
/// (equivalently at the cube face centers).
SpherePair sphere_complexes();

/// Solve A x = b over GF(2); rows are bitmasks over `num_vars` variables.
/// Returns one solution (free variables set to 0); false if inconsistent.
bool solve_gf2(std::vector<std::uint32_t> rows, std::vector<int> rhs, int num_vars,
               std::vector<int>& solution);

}  // namespace flatsurf
