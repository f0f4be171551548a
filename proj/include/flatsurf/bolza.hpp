#pragma once

#include <map>
#include <string>

#include "flatsurf/circuits.hpp"
#include "flatsurf/core.hpp"
#include "flatsurf/exact.hpp"
#include "flatsurf/sphere.hpp"

namespace flatsurf::bolza {

/// Where one octagon side lives: octagon f (a cube face), side k in 0..7.
/// Side k projects to cube edge k mod 4 of the face cycle.
struct OctagonSide {
    int octagon = -1;
    int side = -1;
};

/// The singular flat metric glued from six regular octagons centered on the
/// Weierstrass points. Each octagon is stored as 8 isosceles triangles with a
/// common apex at the octagon center, so the center shows up as a (smooth)
/// vertex class of the surface. Polygon ids: octagon f, wedge k -> 8*f + k.
struct BolzaOctagonModel {
    double x = 0.0;  // distance between opposite octagon sides
    double y = 0.0;  // octagon side length, y = x tan(pi/8)
    ConeSurface surface;

    std::vector<int> weierstrass_points;  // cone point indices, theta = 2pi
    std::vector<int> special_points;      // cone point indices, theta = 9pi/4

    QSqrt2 exact_area_coeff;     // area = coeff * x^2, coeff = 12 tan(pi/8)
    QSqrt2 exact_systole_coeff;  // systole = coeff * x = 2x
    double exact_area() const { return exact_area_coeff.value() * x * x; }
    double exact_systole() const { return exact_systole_coeff.value() * x; }
    /// SR = systole^2 / area = (1/3) cot(pi/8), exactly.
    QSqrt2 exact_systolic_ratio() const {
        return exact_systole_coeff * exact_systole_coeff / exact_area_coeff;
    }

    SpherePair sphere;
    /// side pairing of the octagon boundary, an involution on (octagon, side)
    OctagonSide side_partner[6][8];
    /// cone point index of the center of octagon f
    std::vector<int> center_cone_point;

    int wedge_polygon(int octagon, int side) const { return 8 * octagon + side; }
};

/// Build the metric g_O at scale x > 0. The gluing lifts the cube's
/// face-adjacency through the branched double cover; genus and cone-angle
/// invariants are asserted on the result.
BolzaOctagonModel build_octagon_model(double x);

/// The same metric built from the 16 "equilateral" triangles of the lifted
/// octahedral triangulation, each cut into 3 isosceles triangles with obtuse
/// apex 3pi/4. Polygon ids: triangle lift t (0..15), piece j (0..2) -> 3*t + j.
ConeSurface build_triangle_model(double x);

/// Combinatorial half of the systole argument: the liftable six-edge circuits
/// give 12 closed geodesics of length 2x; nothing shorter lifts.
struct SystolicCertificate {
    double candidate_length = 0.0;         // 2x
    std::vector<CircuitCertificate> dominoes;       // the 12 liftable classes
    int non_liftable_faces = 0;            // length-4 circuits, none lift
    int non_liftable_petries = 0;          // length-6 type (b) circuits
    int liftable_below_six = 0;            // must be 0
    bool cat0_checked = false;
};

/// Throws NotCat0 if the model fails the CAT(0) test.
SystolicCertificate systolic_certificate(const BolzaOctagonModel& model);

struct NamedConstant {
    double value = 0.0;
    std::string exact_expr;
};

/// Closed-form constants: the three systolic ratios of the genus-2 table and
/// the bound constants. Keys: berger, jenni_sys, jenni_area, jenni_sr,
/// bolza_flat_sr, cat0_bound, bolza_conformal_bound, bavard_klein_bottle,
/// hyperelliptic_disk_bound_genus2, jenni_sys_arcosh.
std::map<std::string, NamedConstant> exact_constants();

}  // namespace flatsurf::bolza
