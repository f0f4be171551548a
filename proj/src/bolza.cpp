#include "flatsurf/bolza.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

std::string QSqrt2::str() const {
    std::ostringstream os;
    auto frac = [](const Rational& r) {
        std::ostringstream f;
        f << r.num;
        if (r.den != 1) f << "/" << r.den;
        return f.str();
    };
    os << "(" << frac(a) << ") + (" << frac(b) << ")*sqrt(2)";
    return os.str();
}

}  // namespace flatsurf

namespace flatsurf::bolza {

namespace {

/// Z/2 labels on cube edges: walking along edge e switches sheets iff
/// omega[e] = 1. The boundary of every face must switch sheets once (each
/// face encloses one branch point).
std::vector<int> cube_sheet_labels(const SphereComplex& cube) {
    std::vector<std::uint32_t> rows;
    std::vector<int> rhs;
    for (const auto& f : cube.faces) {
        std::uint32_t row = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            row |= 1u << cube.edge_index(f[i], f[(i + 1) % f.size()]);
        rows.push_back(row);
        rhs.push_back(1);
    }
    std::vector<int> omega;
    if (!solve_gf2(rows, rhs, cube.num_edges(), omega))
        throw ConstructionInvariantViolated("no consistent sheet labels on the cube");
    return omega;
}

/// Z/2 labels on octahedron edges: crossing edge e switches sheets iff
/// nu[e] = 1. A small loop around each vertex (a branch point) crosses its
/// incident edges once each and must switch sheets.
std::vector<int> octahedron_crossing_labels(const SphereComplex& oct) {
    std::vector<std::uint32_t> rows(oct.num_vertices(), 0);
    std::vector<int> rhs(oct.num_vertices(), 1);
    for (int e = 0; e < oct.num_edges(); ++e) {
        rows[oct.edges[e].first] |= 1u << e;
        rows[oct.edges[e].second] |= 1u << e;
    }
    std::vector<int> nu;
    if (!solve_gf2(rows, rhs, oct.num_edges(), nu))
        throw ConstructionInvariantViolated("no consistent crossing labels on the octahedron");
    return nu;
}

void check_bolza_invariants(const ConeSurface& s, double expected_area, const char* which) {
    std::ostringstream tag;
    tag << which << " model: ";
    if (s.topology().genus != 2)
        throw ConstructionInvariantViolated(tag.str() + "genus != 2");
    int smooth = 0, special = 0;
    const double eps = 1e-9;
    for (const ConePoint& cp : s.cone_points()) {
        if (std::abs(cp.total_angle - 2.0 * kPi) <= eps)
            ++smooth;
        else if (std::abs(cp.total_angle - 2.25 * kPi) <= eps)
            ++special;
    }
    if (smooth != 6 || special != 16 ||
        static_cast<int>(s.cone_points().size()) != 22)
        throw ConstructionInvariantViolated(tag.str() + "cone angle multiset is wrong");
    if (check_gauss_bonnet(s) > 1e-9)
        throw ConstructionInvariantViolated(tag.str() + "Gauss-Bonnet residual too large");
    if (std::abs(area(s) - expected_area) > 1e-9 * expected_area)
        throw ConstructionInvariantViolated(tag.str() + "area mismatch");
    if (!is_cat0(s).ok)
        throw ConstructionInvariantViolated(tag.str() + "not CAT(0)");
}

}  // namespace

BolzaOctagonModel build_octagon_model(double x) {
    if (x <= 0.0) throw std::invalid_argument("x must be positive");

    BolzaOctagonModel m;
    m.x = x;
    m.y = x * std::tan(kPi / 8.0);
    m.sphere = sphere_complexes();
    const SphereComplex& cube = m.sphere.cubical;
    std::vector<int> omega = cube_sheet_labels(cube);

    // The octagon over cube face f wraps the square boundary twice. Walk the
    // boundary in the double cover and record, for every octagon side, which
    // lift of the cube edge it covers: (edge, sheet at the smaller endpoint).
    std::map<std::pair<int, int>, std::vector<OctagonSide>> sides_over_lift;
    for (int f = 0; f < 6; ++f) {
        const auto& cyc = cube.faces[f];
        int sheet = 0;
        for (int k = 0; k < 8; ++k) {
            int u = cyc[k % 4], v = cyc[(k + 1) % 4];
            int e = cube.edge_index(u, v);
            int sheet_next = sheet ^ omega[e];
            int canonical = (u < v) ? sheet : sheet_next;
            sides_over_lift[{e, canonical}].push_back({f, k});
            sheet = sheet_next;
        }
        if (sheet != 0)
            throw ConstructionInvariantViolated("octagon boundary walk does not close");
    }

    for (const auto& [lift, sides] : sides_over_lift) {
        if (sides.size() != 2 || sides[0].octagon == sides[1].octagon)
            throw ConstructionInvariantViolated("bad side pairing over an edge lift");
        m.side_partner[sides[0].octagon][sides[0].side] = sides[1];
        m.side_partner[sides[1].octagon][sides[1].side] = sides[0];
    }

    // geometry: octagon centered at the origin, vertex k at angle (2k+1)pi/8,
    // cut into 8 wedges [center, A_k, A_{k+1}]
    const double R = 0.5 * x / std::cos(kPi / 8.0);
    auto octagon_vertex = [&](int k) {
        double t = (2.0 * k + 1.0) * kPi / 8.0;
        return Vec2{R * std::cos(t), R * std::sin(t)};
    };

    std::vector<EuclideanPolygon> polys;
    std::vector<EdgeGluing> gluings;
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            EuclideanPolygon p;
            p.id = m.wedge_polygon(f, k);
            p.vertices = {Vec2{0, 0}, octagon_vertex(k), octagon_vertex(k + 1)};
            polys.push_back(std::move(p));
            // spoke: edge 0 of wedge k is edge 2 of wedge k-1
            gluings.push_back({{m.wedge_polygon(f, k), 0}, {m.wedge_polygon(f, (k + 7) % 8), 2}});
        }
    }
    for (int f = 0; f < 6; ++f) {
        for (int k = 0; k < 8; ++k) {
            OctagonSide p = m.side_partner[f][k];
            if (p.octagon < f || (p.octagon == f && p.side < k)) continue;
            gluings.push_back({{m.wedge_polygon(f, k), 1}, {m.wedge_polygon(p.octagon, p.side), 1}});
        }
    }

    m.surface = build_surface(std::move(polys), std::move(gluings), 1e-9);

    m.exact_area_coeff = QSqrt2(Rational(12)) * QSqrt2::tan_pi_8();
    m.exact_systole_coeff = QSqrt2(Rational(2));
    check_bolza_invariants(m.surface, m.exact_area(), "octagon");

    for (int f = 0; f < 6; ++f)
        m.center_cone_point.push_back(m.surface.cone_point_of({m.wedge_polygon(f, 0), 0}));
    const auto& cps = m.surface.cone_points();
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i].smooth(1e-9))
            m.weierstrass_points.push_back(static_cast<int>(i));
        else
            m.special_points.push_back(static_cast<int>(i));
    }
    return m;
}

ConeSurface build_triangle_model(double x) {
    if (x <= 0.0) throw std::invalid_argument("x must be positive");

    SpherePair sp = sphere_complexes();
    const SphereComplex& oct = sp.octahedral;
    std::vector<int> nu = octahedron_crossing_labels(oct);

    // 16 lifted "equilateral" triangles, indexed t = 2f + s for octahedron
    // face f and sheet s; each cut into 3 isosceles pieces with the obtuse
    // apex 3pi/4 at the lift's singular center.
    const double h = 0.5 * x * std::tan(kPi / 8.0);
    auto piece_id = [](int t, int j) { return 3 * t + j; };

    std::vector<EuclideanPolygon> polys;
    std::vector<EdgeGluing> gluings;
    for (int t = 0; t < 16; ++t) {
        for (int j = 0; j < 3; ++j) {
            EuclideanPolygon p;
            p.id = piece_id(t, j);
            p.vertices = {Vec2{0, 0}, Vec2{x, 0}, Vec2{0.5 * x, h}};
            polys.push_back(std::move(p));
            // spokes around the center: edge 1 of piece j meets edge 2 of piece j+1
            gluings.push_back({{piece_id(t, j), 1}, {piece_id(t, (j + 1) % 3), 2}});
        }
    }
    for (int f = 0; f < 8; ++f) {
        const auto& cyc = oct.faces[f];
        for (int j = 0; j < 3; ++j) {
            int u = cyc[j], v = cyc[(j + 1) % 3];
            int e = oct.edge_index(u, v);
            auto fs = oct.faces_of_edge(e);
            int f2 = fs[0] == f ? fs[1] : fs[0];
            int j2 = -1;
            const auto& cyc2 = oct.faces[f2];
            for (int jj = 0; jj < 3; ++jj)
                if (oct.edge_index(cyc2[jj], cyc2[(jj + 1) % 3]) == e) j2 = jj;
            for (int s = 0; s < 2; ++s) {
                int t = 2 * f + s, t2 = 2 * f2 + (s ^ nu[e]);
                if (t2 < t) continue;  // each gluing once
                gluings.push_back({{piece_id(t, j), 0}, {piece_id(t2, j2), 0}});
            }
        }
    }

    ConeSurface s = build_surface(std::move(polys), std::move(gluings), 1e-9);
    double expected = 12.0 * std::tan(kPi / 8.0) * x * x;
    check_bolza_invariants(s, expected, "triangle");
    return s;
}

SystolicCertificate systolic_certificate(const BolzaOctagonModel& model) {
    Cat0Result c = is_cat0(model.surface);
    if (!c.ok)
        throw NotCat0("model is not CAT(0); cone point " +
                      std::to_string(c.witness.value_or(-1)));

    SystolicCertificate cert;
    cert.cat0_checked = true;
    cert.candidate_length = 2.0 * model.x;
    for (const CircuitCertificate& cc : enumerate_circuits(model.sphere.cubical, 6)) {
        if (cc.circuit_type == CircuitType::Domino)
            cert.dominoes.push_back(cc);
        else if (cc.circuit_type == CircuitType::Face)
            ++cert.non_liftable_faces;
        else if (cc.circuit_type == CircuitType::Petrie)
            ++cert.non_liftable_petries;
        if (cc.liftable && cc.length < 6) ++cert.liftable_below_six;
    }
    if (cert.dominoes.size() != 12 || cert.liftable_below_six != 0)
        throw ConstructionInvariantViolated("circuit census disagrees with the certificate");
    return cert;
}

std::map<std::string, NamedConstant> exact_constants() {
    std::map<std::string, NamedConstant> t;
    const double sq2 = std::sqrt(2.0);
    double jenni_sys = 2.0 * std::log(1.0 + sq2 + std::sqrt(2.0 + 2.0 * sq2));
    t["berger"] = {2.0 / 3.0, "2/3"};
    t["jenni_sys"] = {jenni_sys, "2*log(1+sqrt2+sqrt(2+2*sqrt2))"};
    t["jenni_sys_arcosh"] = {2.0 * std::acosh(1.0 + sq2), "2*arcosh(1+sqrt2)"};
    t["jenni_area"] = {4.0 * kPi, "4*pi"};
    t["jenni_sr"] = {jenni_sys * jenni_sys / (4.0 * kPi), "jenni_sys^2/(4*pi)"};
    t["bolza_flat_sr"] = {(sq2 + 1.0) / 3.0, "(1/3)*(sqrt2+1)"};
    t["cat0_bound"] = {(1.0 / std::tan(kPi / 8.0)) / 3.0, "(1/3)*cot(pi/8)"};
    t["bolza_conformal_bound"] = {kPi / 3.0, "pi/3"};
    t["bavard_klein_bottle"] = {kPi / std::pow(2.0, 1.5), "pi/2^(3/2)"};
    t["hyperelliptic_disk_bound_genus2"] = {8.0 / (3.0 * kPi), "8/((2+1)*pi)"};
    return t;
}

}  // namespace flatsurf::bolza
