#include "flatsurf/bolza_mesh.hpp"

#include <algorithm>
#include <set>

#include "flatsurf/errors.hpp"

namespace flatsurf::bolza {

namespace {

/// J on octagon sides: (f, k) -> (f, k+4). The side pairing must commute with
/// it for J to descend to the glued surface.
OctagonSide rotate(const OctagonSide& s) { return {s.octagon, (s.side + 4) % 8}; }

void require_rotation_compatible(const BolzaOctagonModel& m) {
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            OctagonSide p = m.side_partner[f][k];
            OctagonSide q = m.side_partner[f][(k + 4) % 8];
            OctagonSide want = rotate(p);
            if (q.octagon != want.octagon || q.side != want.side)
                throw NotInvolution("side pairing does not commute with the rotation by pi");
        }
    }
}

}  // namespace

HyperellipticAction hyperelliptic_action(const BolzaOctagonModel& model, const MeshGraph& mesh) {
    require_rotation_compatible(model);
    HyperellipticAction act;
    act.involution.assign(mesh.num_vertices(), -1);
    std::set<int> skel;
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            const auto& row = mesh.boundary_samples(model.wedge_polygon(f, k), 1);
            const auto& img = mesh.boundary_samples(model.wedge_polygon(f, (k + 4) % 8), 1);
            if (row.size() != img.size())
                throw NotInvolution("opposite sides sampled at different rates");
            for (std::size_t i = 0; i < row.size(); ++i) {
                int v = row[i];
                int w = img[i];
                if (act.involution[v] != -1 && act.involution[v] != w)
                    throw NotInvolution("rotation images disagree across charts");
                act.involution[v] = w;
                skel.insert(v);
            }
        }
    }
    act.skeleton.assign(skel.begin(), skel.end());
    for (int v : act.skeleton)
        if (act.involution[act.involution[v]] != v)
            throw NotInvolution("skeleton map is not an involution");
    return act;
}

std::vector<std::vector<LoopSegment>> domino_loops(const BolzaOctagonModel& model) {
    require_rotation_compatible(model);
    auto side_mid = [&](const ConeSurface& s, int poly) {
        return s.polygon(poly).edge_midpoint(1);
    };
    const ConeSurface& s = model.surface;

    std::vector<std::vector<LoopSegment>> loops;
    std::set<std::vector<std::pair<int, int>>> seen;
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            OctagonSide p = model.side_partner[f][k];
            // the loop visits sides (f,k+4), (f,k), (p.f,p.k), (p.f,p.k+4)
            std::vector<std::pair<int, int>> key = {{f, k},
                                                    {f, (k + 4) % 8},
                                                    {p.octagon, p.side},
                                                    {p.octagon, (p.side + 4) % 8}};
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;

            int in_wedge = model.wedge_polygon(f, (k + 4) % 8);
            int out_wedge = model.wedge_polygon(f, k);
            int in_wedge2 = model.wedge_polygon(p.octagon, p.side);
            int out_wedge2 = model.wedge_polygon(p.octagon, (p.side + 4) % 8);
            loops.push_back({
                {in_wedge, side_mid(s, in_wedge), {0, 0}},
                {out_wedge, {0, 0}, side_mid(s, out_wedge)},
                {in_wedge2, side_mid(s, in_wedge2), {0, 0}},
                {out_wedge2, {0, 0}, side_mid(s, out_wedge2)},
            });
        }
    }
    if (loops.size() != 12)
        throw ConstructionInvariantViolated("expected 12 candidate loops, found " +
                                            std::to_string(loops.size()));
    return loops;
}

}  // namespace flatsurf::bolza
