#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "flatsurf/mesh.hpp"

namespace flatsurf {

/// Offset of the empirical worst-case relative overestimate of graph distance
/// vs geodesic distance for the radius-4h shortcut mesh, frozen from
/// calibration runs on surfaces with known distances. The h/L term covers
/// endpoint quantization.
inline constexpr double kDistortionBand = 0.012;

inline double relative_error_band(double h, double length) {
    return kDistortionBand + (length > 0 ? h / length : 0.0);
}

/// The 2^{2g}-sheeted cover of a mesh whose deck group is H_1(S; Z/2).
/// Homology classes are bitmasks over a fixed basis of 2g gluings; a cycle is
/// essential (non-separating mod 2) iff its class is nonzero.
struct HomologyCover {
    std::shared_ptr<const MeshGraph> mesh;
    int genus = 0;
    int num_classes = 1;  // 2^{2g}
    /// Deck transformation picked up when crossing each surface gluing.
    std::vector<std::uint32_t> gluing_labels;
    /// Per mesh copy: class offset to its base vertex representative.
    std::vector<std::uint32_t> copy_offsets;
    /// Per mesh edge: class change along the edge, derived from copy_offsets.
    std::vector<std::uint32_t> edge_labels;
    /// Per CSR adjacency entry of the base mesh (parallel to adj_targets()).
    std::vector<std::uint32_t> adj_labels;

    int num_states() const { return num_classes * mesh->num_vertices(); }
};

/// Builds the cover and verifies that the non-tree cycle classes of the mesh
/// span (Z/2)^{2g} (throws ConstructionInvariantViolated otherwise). Throws
/// InconsistentInputs for genus 0 (no essential cycles) or genus > 8.
HomologyCover build_homology_cover(const MeshGraph& mesh);

enum class SampleStrategy {
    ConePoints,   // basepoints at the cone vertices only
    AllVertices,  // every mesh vertex (exact on the graph, slower)
};

struct SystoleEstimate {
    double length = 0.0;
    std::uint32_t homology_class = 0;
    int base_vertex = -1;        // basepoint realizing the minimum
    std::vector<int> cycle;      // base vertex loop, cycle.front() == cycle.back()
    double h = 0.0;
    double error_bound = 0.0;    // relative; true value in [length/(1+bound), length]
};

/// Shortest cycle with nonzero Z/2-homology class through any of the given
/// basepoints: min over sources v and classes c != 0 of d((v,0), (v,c)).
SystoleEstimate shortest_essential_cycle(const HomologyCover& cover,
                                         const std::vector<int>& sources);
SystoleEstimate shortest_essential_cycle(const HomologyCover& cover,
                                         SampleStrategy strategy = SampleStrategy::ConePoints);

/// Per-class shortest cycle lengths through the given basepoints; entry 0 is
/// 0 and unsampled classes are +infinity.
std::vector<double> shortest_by_class(const HomologyCover& cover, const std::vector<int>& sources);

/// Straight segment inside one polygon chart, used to describe a loop by
/// waypoints. Endpoints are snapped to the nearest mesh copy of the chart.
struct LoopSegment {
    int polygon = -1;
    Vec2 from;
    Vec2 to;
};

/// Z/2-homology class of a closed loop given as chart segments. Consecutive
/// segment endpoints (cyclically) must land on the same base vertex; throws
/// InconsistentInputs otherwise.
std::uint32_t loop_class(const HomologyCover& cover, const std::vector<LoopSegment>& segments);

}  // namespace flatsurf
