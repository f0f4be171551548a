#pragma once

#include <vector>

#include "flatsurf/core.hpp"
#include "flatsurf/sphere.hpp"

namespace flatsurf::testing {

/// Unit-square torus: opposite sides identified by translation.
inline ConeSurface flat_torus(double side = 1.0, double eps = 1e-9) {
    EuclideanPolygon sq;
    sq.id = 0;
    sq.vertices = {{0, 0}, {side, 0}, {side, side}, {0, side}};
    return build_surface({sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}}, eps);
}

/// Boundary surface of the unit cube: six squares glued along the cube's
/// combinatorics. Positively curved corners (3pi/2), so not CAT(0).
inline ConeSurface cube_surface() {
    SpherePair sp = sphere_complexes();
    const SphereComplex& cube = sp.cubical;
    std::vector<EuclideanPolygon> polys;
    for (int f = 0; f < 6; ++f) {
        EuclideanPolygon p;
        p.id = f;
        p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        polys.push_back(p);
    }
    std::vector<EdgeGluing> gluings;
    for (int e = 0; e < cube.num_edges(); ++e) {
        auto fs = cube.faces_of_edge(e);
        auto side_in = [&](int f) {
            const auto& cyc = cube.faces[f];
            for (int j = 0; j < 4; ++j)
                if (cube.edge_index(cyc[j], cyc[(j + 1) % 4]) == e) return j;
            return -1;
        };
        gluings.push_back({{fs[0], side_in(fs[0])}, {fs[1], side_in(fs[1])}});
    }
    return build_surface(std::move(polys), std::move(gluings), 1e-9);
}

/// One regular octagon with the genus-2 identification a b a^-1 b^-1 c d c^-1 d^-1.
inline ConeSurface genus2_octagon(double circumradius = 1.0) {
    EuclideanPolygon oct;
    oct.id = 0;
    for (int k = 0; k < 8; ++k) {
        double t = (2.0 * k + 1.0) * kPi / 8.0;
        oct.vertices.push_back({circumradius * std::cos(t), circumradius * std::sin(t)});
    }
    return build_surface({oct}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}, {{0, 4}, {0, 6}}, {{0, 5}, {0, 7}}},
                         1e-9);
}

}  // namespace flatsurf::testing
