#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatsurf/homology.hpp"
#include "flatsurf/mesh.hpp"

namespace flatsurf {

struct VoronoiCell {
    int site = -1;                      // base vertex id of the site
    double area = 0.0;                  // share of the surface area
    int side_count = 0;                 // number of boundary arcs (k)
    std::vector<double> center_angles;  // theta_i subtended at the site, one per arc
    double max_radius = 0.0;            // max graph distance from the site inside the cell
};

/// One connected boundary arc between two cells, as the mesh edges crossing it.
struct VoronoiArc {
    int site_a = -1;  // site indices into sites[], site_a < site_b
    int site_b = -1;
    std::vector<int> cut_edges;  // mesh edge ids with one endpoint in each cell
};

/// v, e, f of the dual graph after projecting by an involution; defined when
/// every arc and junction can be matched through the involution's domain.
struct QuotientStats {
    int vertices = 0;  // site orbits
    int edges = 0;     // arc orbits
    int faces = 0;     // junction orbits
    int euler_characteristic() const { return vertices - edges + faces; }
};

struct VoronoiDecomposition {
    std::shared_ptr<const MeshGraph> mesh;
    std::vector<int> sites;             // base vertex ids
    std::vector<int> labels;            // per base vertex: index into sites[]
    std::vector<VoronoiCell> cells;     // one per site, same order
    std::vector<VoronoiArc> arcs;       // dual multigraph: one edge per arc
    int junction_count = 0;             // points where >= 3 cells meet
    double total_area = 0.0;
    std::optional<QuotientStats> quotient;
};

/// Multi-source shortest-path decomposition. Cell areas come from polygon
/// subsampling at spacing h/2: every sample carries an equal share of its
/// polygon's area and is assigned to the site minimizing graph-plus-chart
/// distance (ties to the lowest site index), so the cell areas add up to the
/// surface area exactly. If `involution` (a map of base vertices, -1 outside
/// its domain) is given, quotient stats are computed by matching cells, arcs
/// and junctions through it.
VoronoiDecomposition voronoi_decompose(const MeshGraph& mesh, const std::vector<int>& sites,
                                       const std::vector<int>* involution = nullptr);

/// Max edge count of a simple spherical graph on f vertices: 3f - 6.
int euler_edge_bound(int num_sites);

/// Sum of the isosceles-triangle bounds (sys/4)^2 tan(theta_i/2). Requires
/// 0 < theta_i < pi (AngleOutOfRange otherwise).
double cell_area_lower_bound(double sys, const std::vector<double>& center_angles);

/// Genus-2 CAT(0) total-area lower bound 3 tan(pi/8) sys^2: the aggregate of
/// cell_area_lower_bound over the 48 triangle slots of 2g+2 = 6 cells with
/// total center angle 12 pi, minimized at equal slot angles pi/4 by convexity
/// of tan (the CAT(0) condition forbids smaller slot angles at equality).
double jensen_area_bound(double sys);

/// Systolic-ratio bound 8 / ((genus+1) pi) for hyperelliptic CAT(0) surfaces,
/// from 2g+2 disjoint disks of radius sys/4, each of area >= pi (sys/4)^2.
double hyperelliptic_disk_bound(int genus);

/// Area lower bound (12/pi) delta^2 from the displacement delta of an
/// isometric involution, via six disjoint Moebius-band neighborhoods.
double pu_displacement_bound(double delta);

struct BoundEntry {
    std::string name;
    std::string statement;   // human-readable inequality, sign convention
    double bound_value = 0.0;
    double achieved = 0.0;
    bool applicable = false;
    bool satisfied = false;  // applicable and inequality holds within tolerance
    double slack = 0.0;      // >= 0 iff the inequality holds with room to spare
    double tolerance = 0.0;  // mesh-induced allowance used for `satisfied`
};

struct BoundReport {
    double sys = 0.0;
    double area = 0.0;
    double systolic_ratio = 0.0;
    double delta = 0.0;
    double max_cell_radius = 0.0;  // validity indicator: should stay below sys/2
    bool cell_radius_ok = false;
    std::vector<BoundEntry> entries;

    const BoundEntry& entry(const std::string& name) const;
    bool all_satisfied() const;
};

/// Evaluates every applicable bound against the measured quantities. The
/// inputs must describe the same surface (InconsistentInputs otherwise).
/// Bounds that require genus 2 or CAT(0) are marked not applicable instead of
/// failing on other surfaces. A violated applicable bound beyond the mesh
/// tolerance indicates corrupt inputs, since the inequalities are theorems.
BoundReport bound_report(const ConeSurface& surface, const SystoleEstimate& sys_estimate,
                         const VoronoiDecomposition& vd, const DisplacementResult& delta);

}  // namespace flatsurf
