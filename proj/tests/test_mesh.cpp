#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "flatsurf/bolza.hpp"
#include "flatsurf/bolza_mesh.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/homology.hpp"
#include "flatsurf/mesh.hpp"

using namespace flatsurf;
using namespace flatsurf::testing;

namespace {

/// Exact oracle for the unit flat torus: distance between points given in the
/// square chart, minimizing over horizontal/vertical wraps.
double torus_dist(const Vec2& a, const Vec2& b) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
}

Vec2 base_position(const MeshGraph& m, int base) {
    for (const MeshCopy& c : m.copies())
        if (c.base == base) return c.pos;
    REQUIRE(false);
    return {};
}

}  // namespace

TEST_CASE("torus mesh distances match the exact oracle") {
    ConeSurface t = flat_torus();
    MeshGraph m = refine(t, 1.0 / 20);
    CHECK(m.num_vertices() > 300);

    // between lattice-aligned sample points the graph is exact
    int a = m.nearest_vertex(0, {0.275, 0.275});
    int b = m.nearest_vertex(0, {0.725, 0.725});
    CHECK(distance(m, a, b) == doctest::Approx(torus_dist({0.275, 0.275}, {0.725, 0.725})).epsilon(1e-9));
    int c = m.nearest_vertex(0, {0.775, 0.275});
    CHECK(distance(m, a, c) == doctest::Approx(0.5).epsilon(1e-9));

    // wrap-around shortcut must beat the straight-line chart distance
    int p = m.nearest_vertex(0, {0.05, 0.5});
    int q = m.nearest_vertex(0, {0.95, 0.5});
    double d = distance(m, p, q);
    CHECK(d < 0.2);
    CHECK(d >= torus_dist(base_position(m, p), base_position(m, q)) - 1e-12);
}

TEST_CASE("graph distance never underestimates and stays within the band") {
    ConeSurface t = flat_torus();
    const double h = 1.0 / 20;
    MeshGraph m = refine(t, h);
    std::vector<Vec2> pos(m.num_vertices());
    for (const MeshCopy& c : m.copies()) pos[c.base] = c.pos;
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, m.num_vertices() - 1);
    for (int trial = 0; trial < 8; ++trial) {
        int s = pick(rng);
        auto dist = distances_from(m, s);
        for (int v = 0; v < m.num_vertices(); ++v) {
            double truth = torus_dist(pos[s], pos[v]);
            if (truth < 0.25) continue;
            CHECK(dist[v] >= truth - 1e-12);
            CHECK(dist[v] <= truth * (1.0 + relative_error_band(h, truth)) + 1e-12);
        }
    }
}

TEST_CASE("refine rejects unusable spacings") {
    ConeSurface t = flat_torus();
    CHECK_THROWS_AS(refine(t, 0.0), MeshTooCoarse);
    CHECK_THROWS_AS(refine(t, -0.1), MeshTooCoarse);
    CHECK_THROWS_AS(refine(t, 1.5), MeshTooCoarse);
}

TEST_CASE("adjacent octagon centers are at distance x") {
    auto mo = bolza::build_octagon_model(1.0);
    MeshGraph m = refine(mo.surface, 1.0 / 20);
    std::vector<int> centers;
    for (int w : mo.weierstrass_points) centers.push_back(m.cone_vertex_ids()[w]);
    REQUIRE(centers.size() == 6);
    double best = 1e18;
    for (std::size_t i = 1; i < centers.size(); ++i)
        best = std::min(best, distance(m, centers[0], centers[i]));
    CHECK(best == doctest::Approx(1.0).epsilon(1e-9));  // straight through a shared side
}

TEST_CASE("homology cover of the torus") {
    MeshGraph m = refine(flat_torus(), 1.0 / 20);
    HomologyCover cov = build_homology_cover(m);
    CHECK(cov.genus == 1);
    CHECK(cov.num_classes == 4);
    auto by_class = shortest_by_class(cov, m.cone_vertex_ids());
    CHECK(by_class[0] == 0.0);
    std::vector<double> nz = {by_class[1], by_class[2], by_class[3]};
    std::sort(nz.begin(), nz.end());
    CHECK(nz[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(nz[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(nz[2] == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));  // diagonal class
}

TEST_CASE("cover construction rejects genus 0") {
    MeshGraph m = refine(cube_surface(), 1.0 / 10);
    CHECK_THROWS_AS(build_homology_cover(m), InconsistentInputs);
}

TEST_CASE("systole estimate is sound and inside its own band") {
    auto mo = bolza::build_octagon_model(1.0);
    const double truth = mo.exact_systole();
    for (double h : {1.0 / 10, 1.0 / 20, 1.0 / 40}) {
        CAPTURE(h);
        HomologyCover cov = build_homology_cover(refine(mo.surface, h));
        SystoleEstimate est = shortest_essential_cycle(cov, SampleStrategy::ConePoints);
        CHECK(est.length >= truth - 1e-9);  // graph paths are genuine paths
        CHECK(est.length <= truth * (1.0 + est.error_bound));
        CHECK(est.h == h);
        CHECK(est.error_bound == doctest::Approx(relative_error_band(h, est.length)));
        CHECK(est.homology_class != 0);
        REQUIRE(est.cycle.size() >= 3);
        CHECK(est.cycle.front() == est.base_vertex);
        CHECK(est.cycle.back() == est.base_vertex);
    }
}

TEST_CASE("torus systole via every vertex is exact") {
    HomologyCover cov = build_homology_cover(refine(flat_torus(), 1.0 / 10));
    SystoleEstimate est = shortest_essential_cycle(cov, SampleStrategy::AllVertices);
    CHECK(est.length == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the twelve shortest classes are the candidate loop classes") {
    auto mo = bolza::build_octagon_model(1.0);
    HomologyCover cov = build_homology_cover(refine(mo.surface, 1.0 / 20));
    auto by_class = shortest_by_class(cov, cov.mesh->cone_vertex_ids());

    auto loops = bolza::domino_loops(mo);
    REQUIRE(loops.size() == 12);
    std::set<std::uint32_t> loop_classes;
    for (const auto& L : loops) loop_classes.insert(loop_class(cov, L));
    CHECK(loop_classes.size() == 12);
    CHECK(loop_classes.count(0) == 0);

    const double sys = mo.exact_systole();
    for (std::uint32_t c = 1; c < 16; ++c) {
        CAPTURE(c);
        if (loop_classes.count(c)) {
            CHECK(by_class[c] == doctest::Approx(sys).epsilon(0.01));
        } else {
            CHECK(by_class[c] > 1.4 * sys);  // next classes are much longer
        }
    }
}

TEST_CASE("hyperelliptic displacement") {
    auto mo = bolza::build_octagon_model(1.0);
    MeshGraph m = refine(mo.surface, 1.0 / 20);
    auto act = bolza::hyperelliptic_action(mo, m);
    CHECK(act.skeleton.size() > 100);

    DisplacementResult d = displacement(m, act.involution, act.skeleton);
    // delta(J) = x: each skeleton point travels at least across the octagon
    CHECK(d.delta == doctest::Approx(1.0).epsilon(relative_error_band(m.h(), 1.0)));
    CHECK(d.delta >= 1.0 - 1e-9);
    CHECK(act.involution[d.witness] == d.witness_image);
    REQUIRE(!d.path.empty());
    CHECK(d.path.front() == d.witness);
    CHECK(d.path.back() == d.witness_image);

    SUBCASE("identity map has zero displacement") {
        std::vector<int> ident(m.num_vertices());
        for (int v = 0; v < m.num_vertices(); ++v) ident[v] = v;
        CHECK(displacement(m, ident, act.skeleton).delta == 0.0);
    }
    SUBCASE("non-involutions are rejected") {
        auto broken = act.involution;
        // redirect one image so broken[broken[v]] != v
        int v = act.skeleton[0];
        int w = act.skeleton[1] == broken[v] ? act.skeleton[2] : act.skeleton[1];
        broken[v] = w == v ? act.skeleton[3] : w;
        if (broken[broken[v]] == v) broken[v] = v == act.skeleton[4] ? act.skeleton[5] : act.skeleton[4];
        CHECK_THROWS_AS(displacement(m, broken, act.skeleton), NotInvolution);
        CHECK_THROWS_AS(displacement(m, std::vector<int>{}, act.skeleton), NotInvolution);
    }
}

TEST_CASE("loop segments must join") {
    auto mo = bolza::build_octagon_model(1.0);
    HomologyCover cov = build_homology_cover(refine(mo.surface, 1.0 / 10));
    auto loops = bolza::domino_loops(mo);
    auto broken = loops[0];
    broken.pop_back();  // no longer closes up
    CHECK_THROWS_AS(loop_class(cov, broken), InconsistentInputs);
    CHECK_THROWS_AS(loop_class(cov, {}), InconsistentInputs);
}
