#pragma once

#include <optional>
#include <vector>

#include "flatsurf/geom.hpp"

namespace flatsurf {

/// Planar polygon chart. Vertices are counterclockwise; edge k runs from
/// vertex k to vertex k+1 (mod n).
struct EuclideanPolygon {
    int id = 0;
    std::vector<Vec2> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    const Vec2& vertex(int k) const { return vertices[mod(k)]; }
    Vec2 edge_vector(int k) const { return vertex(k + 1) - vertex(k); }
    double edge_length(int k) const { return edge_vector(k).norm(); }
    Vec2 edge_midpoint(int k) const { return (vertex(k) + vertex(k + 1)) * 0.5; }
    double area() const { return signed_area(vertices); }

    /// Interior angle at vertex k, in (0, 2pi); handles reflex corners.
    double interior_angle(int k) const {
        Vec2 out = vertex(k + 1) - vertex(k);
        Vec2 in = vertex(k - 1) - vertex(k);
        double a = ccw_angle(out, in);
        return a == 0.0 ? 2.0 * kPi : a;
    }

    int mod(int k) const {
        int n = size();
        return ((k % n) + n) % n;
    }
};

/// One side of a gluing: edge `edge` of polygon index `polygon`.
struct EdgeRef {
    int polygon = -1;
    int edge = -1;
    bool operator==(const EdgeRef&) const = default;
};

/// Identification of two polygon edges. With all polygons CCW, the only
/// orientation-compatible identification sends the origin of side a to the
/// destination of side b and vice versa; `reversed` records that convention.
/// A gluing with reversed == false would make the surface non-orientable and
/// is rejected at build time.
struct EdgeGluing {
    EdgeRef a;
    EdgeRef b;
    bool reversed = true;
};

/// Corner of a polygon: vertex `vertex` of polygon index `polygon`.
struct Corner {
    int polygon = -1;
    int vertex = -1;
    bool operator==(const Corner&) const = default;
};

/// Vertex equivalence class of the glued surface, with its total cone angle.
struct ConePoint {
    std::vector<Corner> corners;          // cyclic order around the point
    std::vector<int> crossed_gluings;     // gluing crossed after corners[i]
    double total_angle = 0.0;             // theta
    double excess = 0.0;                  // alpha, theta = 2pi(1 + alpha)

    bool smooth(double eps) const { return std::abs(total_angle - 2.0 * kPi) <= eps; }
};

struct SurfaceTopology {
    int num_vertices = 0;
    int num_edges = 0;
    int num_faces = 0;
    int euler_characteristic = 0;
    int genus = 0;
    bool orientable = true;
};

/// Piecewise-flat surface with conical singularities: polygons plus a perfect
/// matching of their edges. Immutable after build_surface; derived data
/// (cone points, topology) is computed eagerly.
class ConeSurface {
public:
    const std::vector<EuclideanPolygon>& polygons() const { return polygons_; }
    const std::vector<EdgeGluing>& gluings() const { return gluings_; }
    const std::vector<ConePoint>& cone_points() const { return cone_points_; }
    const SurfaceTopology& topology() const { return topology_; }
    double tolerance() const { return eps_; }
    double total_area() const { return total_area_; }

    const EuclideanPolygon& polygon(int idx) const { return polygons_[idx]; }
    int num_polygons() const { return static_cast<int>(polygons_.size()); }

    /// Index into gluings() of the gluing containing edge e.
    int gluing_of(const EdgeRef& e) const;
    /// The edge identified with e.
    EdgeRef partner(const EdgeRef& e) const;
    /// Cone point index of corner (polygon, vertex).
    int cone_point_of(const Corner& c) const;

    friend ConeSurface build_surface(std::vector<EuclideanPolygon> polygons,
                                     std::vector<EdgeGluing> gluings, double eps);

private:
    std::vector<EuclideanPolygon> polygons_;
    std::vector<EdgeGluing> gluings_;
    std::vector<ConePoint> cone_points_;
    SurfaceTopology topology_;
    double eps_ = 1e-9;
    double total_area_ = 0.0;
    std::vector<std::vector<int>> gluing_index_;     // [polygon][edge] -> gluing
    std::vector<std::vector<int>> cone_point_index_; // [polygon][vertex] -> cone point
};

/// Validates the input and computes cone points and topology. Polygons are
/// addressed by their `id` field in the gluings; internally everything is
/// re-indexed by position.
/// Throws DegeneratePolygon, UnmatchedEdge, LengthMismatch, NonOrientable,
/// DisconnectedSurface.
ConeSurface build_surface(std::vector<EuclideanPolygon> polygons,
                          std::vector<EdgeGluing> gluings, double eps = 1e-9);

/// One entry per vertex equivalence class.
std::vector<ConePoint> cone_angles(const ConeSurface& surface);

/// |sum of excesses - (2g - 2)|.
double check_gauss_bonnet(const ConeSurface& surface);

struct Cat0Result {
    bool ok = true;
    std::optional<int> witness;  // offending cone point index
};

/// True iff every cone point has total angle >= 2pi - eps.
Cat0Result is_cat0(const ConeSurface& surface);

/// Total area (shoelace per polygon).
double area(const ConeSurface& surface);

/// The same surface with every coordinate multiplied by lambda > 0.
ConeSurface scaled(const ConeSurface& surface, double lambda);

}  // namespace flatsurf
