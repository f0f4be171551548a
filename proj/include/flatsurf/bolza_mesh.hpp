#pragma once

#include <vector>

#include "flatsurf/bolza.hpp"
#include "flatsurf/homology.hpp"
#include "flatsurf/mesh.hpp"

namespace flatsurf::bolza {

/// The hyperelliptic involution J restricted to the 1-skeleton (the octagon
/// boundaries): on each octagon it is the rotation by pi, sending side k at
/// parameter t to side k+4 at parameter t.
struct HyperellipticAction {
    std::vector<int> involution;  // base vertex -> base vertex, -1 off the skeleton
    std::vector<int> skeleton;    // octagon-boundary base vertices
};

/// Builds J on a mesh of the octagon model. Throws NotInvolution if the side
/// pairing is not compatible with the per-octagon rotation (it is for this
/// model; the check guards the construction).
HyperellipticAction hyperelliptic_action(const BolzaOctagonModel& model, const MeshGraph& mesh);

/// The 12 candidate systolic loops, each of length 2x: side midpoint through
/// an octagon center to the opposite side midpoint, then the same through the
/// glued neighbor. Returned as chart segments suitable for loop_class().
std::vector<std::vector<LoopSegment>> domino_loops(const BolzaOctagonModel& model);

}  // namespace flatsurf::bolza
