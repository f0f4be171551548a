#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "flatsurf/core.hpp"

namespace flatsurf {

struct MeshOptions {
    /// Mesh-quality constant c: shortcut edges connect vertices up to c*h
    /// apart inside a polygon. c = 4 keeps the worst-case metric distortion
    /// of the graph under one percent (c = 2 stalls near three percent).
    double shortcut_radius = 4.0;
    /// Interior grid points closer than this fraction of h to the polygon
    /// boundary are dropped; the boundary samples cover that band.
    double boundary_clearance = 0.45;
};

/// A mesh vertex as seen in one polygon chart. Boundary vertices have one
/// copy per polygon they touch, all welded to a common base vertex.
struct MeshCopy {
    int polygon = -1;
    Vec2 pos;
    int base = -1;
};

/// A pair of copies identified across a gluing.
struct WeldPair {
    int copy_a = -1;
    int copy_b = -1;
    int gluing = -1;
};

struct MeshEdge {
    int copy_a = -1;  // endpoints as copies (base ids derivable)
    int copy_b = -1;
    double weight = 0.0;
};

/// Weighted-graph approximation of a ConeSurface. Every edge is a straight
/// segment inside a single polygon, so graph distance is always an upper
/// bound for geodesic distance. Immutable after refine().
class MeshGraph {
public:
    const ConeSurface& surface() const { return *surface_; }
    std::shared_ptr<const ConeSurface> surface_ptr() const { return surface_; }
    double h() const { return h_; }
    const MeshOptions& options() const { return options_; }

    int num_vertices() const { return num_base_; }
    const std::vector<MeshCopy>& copies() const { return copies_; }
    const std::vector<MeshEdge>& edges() const { return edges_; }
    const std::vector<WeldPair>& welds() const { return welds_; }

    /// Base vertex of the i-th cone point of the surface.
    const std::vector<int>& cone_vertex_ids() const { return cone_vertex_ids_; }
    /// Base vertices of the boundary samples along edge `edge` of `polygon`,
    /// ordered from vertex `edge` to vertex `edge`+1.
    const std::vector<int>& boundary_samples(int polygon, int edge) const {
        return boundary_samples_[polygon][edge];
    }
    /// All base vertices lying on polygon boundaries (the 1-skeleton).
    std::vector<int> skeleton_vertices() const;

    /// Copy of `polygon` closest to `point`; pass exact sample positions to
    /// hit mesh vertices exactly.
    int nearest_copy(int polygon, const Vec2& point) const;
    int nearest_vertex(int polygon, const Vec2& point) const {
        return copies_[nearest_copy(polygon, point)].base;
    }
    Vec2 position_of_copy(int copy) const { return copies_[copy].pos; }

    // CSR adjacency over base vertices
    const std::vector<int>& adj_offsets() const { return adj_offsets_; }
    const std::vector<int>& adj_targets() const { return adj_targets_; }
    const std::vector<double>& adj_weights() const { return adj_weights_; }
    const std::vector<int>& adj_edge_ids() const { return adj_edge_ids_; }

    friend MeshGraph refine(const ConeSurface& surface, double h, const MeshOptions& options);

private:
    std::shared_ptr<const ConeSurface> surface_;
    double h_ = 0.0;
    MeshOptions options_;
    int num_base_ = 0;
    std::vector<MeshCopy> copies_;
    std::vector<MeshEdge> edges_;
    std::vector<WeldPair> welds_;
    std::vector<int> cone_vertex_ids_;
    std::vector<std::vector<std::vector<int>>> boundary_samples_;
    std::vector<std::vector<int>> copies_by_polygon_;
    std::vector<int> adj_offsets_, adj_targets_, adj_edge_ids_;
    std::vector<double> adj_weights_;
};

/// Triangulate-and-weld: boundary samples at spacing <= h (count matched per
/// gluing), an interior grid at spacing h, and shortcut edges up to c*h.
/// Throws MeshTooCoarse if h is not smaller than the shortest polygon edge.
MeshGraph refine(const ConeSurface& surface, double h, const MeshOptions& options = {});

/// Single-pair shortest path length on the base graph.
double distance(const MeshGraph& mesh, int a, int b);

/// Single-source distances to every base vertex.
std::vector<double> distances_from(const MeshGraph& mesh, int source);

struct DisplacementResult {
    double delta = 0.0;
    int witness = -1;        // p with dist(p, J(p)) = delta
    int witness_image = -1;  // J(p)
    std::vector<int> path;   // base vertex path from p to J(p)
};

/// delta(J) = min over the skeleton subset of dist(v, J(v)). `involution`
/// maps base vertices to base vertices and must be an involution on
/// `skeleton` (throws NotInvolution otherwise).
DisplacementResult displacement(const MeshGraph& mesh, const std::vector<int>& involution,
                                const std::vector<int>& skeleton);

}  // namespace flatsurf
