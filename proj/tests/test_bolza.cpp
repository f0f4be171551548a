#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "flatsurf/bolza.hpp"
#include "flatsurf/core.hpp"
#include "flatsurf/errors.hpp"

using namespace flatsurf;

namespace {

std::vector<double> sorted_angles(const ConeSurface& s) {
    std::vector<double> a;
    for (const ConePoint& cp : s.cone_points()) a.push_back(cp.total_angle);
    std::sort(a.begin(), a.end());
    return a;
}

/// Independent cycle oracle: every subset of the cube's 12 edges that induces
/// a connected 2-regular subgraph is a simple cycle, and distinct subsets are
/// distinct cycles. Completely different route from the DFS enumeration.
std::map<int, int> brute_force_cycle_counts(const SphereComplex& cube) {
    std::map<int, int> by_length;
    const int ne = cube.num_edges();
    for (unsigned mask = 1; mask < (1u << ne); ++mask) {
        std::vector<int> deg(cube.num_vertices(), 0);
        std::vector<int> picked;
        for (int e = 0; e < ne; ++e) {
            if (mask >> e & 1u) {
                picked.push_back(e);
                ++deg[cube.edges[e].first];
                ++deg[cube.edges[e].second];
            }
        }
        bool two_regular = true;
        for (int v = 0; v < cube.num_vertices(); ++v)
            if (deg[v] != 0 && deg[v] != 2) two_regular = false;
        if (!two_regular || picked.size() < 3) continue;
        // connectivity over picked edges
        std::vector<int> stack = {cube.edges[picked[0]].first};
        std::vector<bool> seen(cube.num_vertices(), false);
        seen[stack[0]] = true;
        int reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++reached;
            for (int e : picked) {
                auto [a, b] = cube.edges[e];
                int w = a == v ? b : (b == v ? a : -1);
                if (w >= 0 && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        if (reached == static_cast<int>(picked.size())) ++by_length[static_cast<int>(picked.size())];
    }
    return by_length;
}

}  // namespace

TEST_CASE("sphere complexes") {
    SpherePair sp = sphere_complexes();
    CHECK(sp.octahedral.num_vertices() == 6);
    CHECK(sp.octahedral.num_edges() == 12);
    CHECK(sp.octahedral.num_faces() == 8);
    CHECK(sp.cubical.num_vertices() == 8);
    CHECK(sp.cubical.num_edges() == 12);
    CHECK(sp.cubical.num_faces() == 6);
    CHECK(sp.octahedral.euler_characteristic() == 2);
    CHECK(sp.cubical.euler_characteristic() == 2);
    CHECK(sp.octahedral.ramification_vertices.size() == 6);
    // duality: one cube face per octahedron vertex, in order
    REQUIRE(sp.dual_face_of_vertex.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(sp.dual_face_of_vertex[i] == i);
}

TEST_CASE("octagon model closed forms") {
    auto m = bolza::build_octagon_model(1.0);
    CHECK(m.y == doctest::Approx(std::tan(kPi / 8)).epsilon(1e-12));
    CHECK(m.exact_area() == doctest::Approx(12 * std::tan(kPi / 8)).epsilon(1e-12));
    CHECK(m.exact_systole() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.exact_systolic_ratio().value() ==
          doctest::Approx((std::sqrt(2.0) + 1.0) / 3.0).epsilon(1e-13));
    CHECK(m.weierstrass_points.size() == 6);
    CHECK(m.special_points.size() == 16);

    auto m3 = bolza::build_octagon_model(3.0);
    CHECK(m3.exact_systole() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(m3.exact_area() == doctest::Approx(108 * std::tan(kPi / 8)).epsilon(1e-12));
    CHECK(m3.exact_systolic_ratio().value() ==
          doctest::Approx(m.exact_systolic_ratio().value()).epsilon(1e-13));
}

TEST_CASE("octagon side pairing is an involution across octagons") {
    auto m = bolza::build_octagon_model(1.0);
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            auto p = m.side_partner[f][k];
            CHECK(p.octagon != f);
            auto q = m.side_partner[p.octagon][p.side];
            CHECK(q.octagon == f);
            CHECK(q.side == k);
        }
    }
}

TEST_CASE("triangle model matches the octagon model") {
    for (double x : {0.5, 1.0, 3.0}) {
        CAPTURE(x);
        auto mo = bolza::build_octagon_model(x);
        ConeSurface mt = bolza::build_triangle_model(x);
        CHECK(mt.topology().genus == 2);
        CHECK(area(mt) == doctest::Approx(area(mo.surface)).epsilon(1e-9));
        auto ao = sorted_angles(mo.surface);
        auto at = sorted_angles(mt);
        REQUIRE(ao.size() == at.size());
        for (std::size_t i = 0; i < ao.size(); ++i)
            CHECK(at[i] == doctest::Approx(ao[i]).epsilon(1e-12));
    }
}

TEST_CASE("angle budget in both models") {
    for (bool triangles : {false, true}) {
        const ConeSurface s =
            triangles ? bolza::build_triangle_model(1.0) : bolza::build_octagon_model(1.0).surface;
        double total = 0.0;
        for (const auto& p : s.polygons())
            for (int k = 0; k < p.size(); ++k) total += p.interior_angle(k);
        CHECK(total == doctest::Approx(6 * 2 * kPi + 16 * 2.25 * kPi).epsilon(1e-12));
    }
}

TEST_CASE("circuit enumeration against the subset oracle") {
    SpherePair sp = sphere_complexes();
    auto oracle = brute_force_cycle_counts(sp.cubical);
    // frozen from the oracle: 6 squares, 16 hexagons, 6 octagons
    CHECK(oracle[4] == 6);
    CHECK(oracle[6] == 16);
    CHECK(oracle[8] == 6);

    auto all = enumerate_circuits(sp.cubical, 12);
    std::map<int, int> counts;
    for (const auto& c : all) ++counts[c.length];
    CHECK(counts == oracle);
}

TEST_CASE("circuit classification and parity") {
    SpherePair sp = sphere_complexes();
    auto up_to_6 = enumerate_circuits(sp.cubical, 6);
    int faces = 0, dominoes = 0, petries = 0, other = 0;
    for (const auto& c : up_to_6) {
        CHECK(c.liftable == (c.enclosed_ramification_count % 2 == 0));
        if (c.length == 4) {
            CHECK(c.circuit_type == CircuitType::Face);
            CHECK(c.enclosed_ramification_count == 1);
            CHECK_FALSE(c.liftable);
        }
        if (c.length == 6)
            CHECK((c.enclosed_ramification_count == 2 || c.enclosed_ramification_count == 3));
        switch (c.circuit_type) {
            case CircuitType::Face: ++faces; break;
            case CircuitType::Domino: ++dominoes; break;
            case CircuitType::Petrie: ++petries; break;
            default: ++other; break;
        }
    }
    CHECK(faces == 6);
    CHECK(dominoes == 12);
    CHECK(petries == 4);
    CHECK(other == 0);

    // no liftable circuit shorter than 6 edges
    for (const auto& c : enumerate_circuits(sp.cubical, 5)) CHECK_FALSE(c.liftable);
}

TEST_CASE("circuit table golden file") {
    SpherePair sp = sphere_complexes();
    std::string csv = circuits_to_csv(enumerate_circuits(sp.cubical, 6));
    std::ifstream in(std::string(GOLDEN_DIR) + "/circuits_len6.csv");
    REQUIRE(in.good());
    std::stringstream want;
    want << in.rdbuf();
    CHECK(csv == want.str());
}

TEST_CASE("systolic certificate") {
    auto m = bolza::build_octagon_model(1.0);
    auto cert = bolza::systolic_certificate(m);
    CHECK(cert.candidate_length == doctest::Approx(2.0));
    CHECK(cert.dominoes.size() == 12);
    CHECK(cert.non_liftable_faces == 6);
    CHECK(cert.non_liftable_petries == 4);
    CHECK(cert.liftable_below_six == 0);
    CHECK(cert.cat0_checked);

    auto m2 = bolza::build_octagon_model(2.5);
    CHECK(bolza::systolic_certificate(m2).candidate_length == doctest::Approx(5.0));
}

TEST_CASE("exact constants table") {
    auto t = bolza::exact_constants();
    CHECK(t.at("jenni_sr").value == doctest::Approx(0.7437).epsilon(1e-4));
    CHECK(t.at("jenni_sys").value ==
          doctest::Approx(t.at("jenni_sys_arcosh").value).epsilon(1e-13));
    CHECK(t.at("cat0_bound").value ==
          doctest::Approx((std::sqrt(2.0) + 1) / 3.0).epsilon(1e-13));
    CHECK(t.at("cat0_bound").value == doctest::Approx(t.at("bolza_flat_sr").value).epsilon(1e-13));
    CHECK(t.at("berger").value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(t.at("bavard_klein_bottle").value == doctest::Approx(1.1107).epsilon(1e-4));
    CHECK(t.at("bolza_conformal_bound").value == doctest::Approx(kPi / 3).epsilon(1e-13));
    CHECK(t.at("hyperelliptic_disk_bound_genus2").value ==
          doctest::Approx(8.0 / (3 * kPi)).epsilon(1e-13));
}

TEST_CASE("exact field arithmetic") {
    using flatsurf::QSqrt2;
    QSqrt2 tan8 = QSqrt2::tan_pi_8();
    QSqrt2 cot8 = QSqrt2::cot_pi_8();
    CHECK((tan8 * cot8 == QSqrt2(1)));
    CHECK(tan8.value() == doctest::Approx(std::tan(kPi / 8)).epsilon(1e-14));
    CHECK((QSqrt2(1) / tan8 == cot8));
}
