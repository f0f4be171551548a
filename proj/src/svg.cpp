#include "flatsurf/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

std::string num(double v) {
    char buf[32];
    // fixed precision keeps the output byte-identical across runs
    std::snprintf(buf, sizeof(buf), "%.6f", v + 0.0);  // normalize -0
    return buf;
}

Vec2 polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

}  // namespace

std::string octagon_figure_svg(const bolza::BolzaOctagonModel& model) {
    const double x = model.x;
    const double y = model.y;                              // side length
    const double R = (0.5 * x) / std::cos(kPi / 8.0);      // corner radius
    const double r_in = (0.5 * y) / std::cos(kPi / 8.0);   // inner octagon corner radius
    const double view = 0.62 * x;                          // viewBox half-extent
    const double stroke = 0.004 * x;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(-view) << " "
        << num(-view) << " " << num(2.0 * view) << " " << num(2.0 * view) << "\">\n";

    // sixteen triangles: each wedge [center, corner, corner] split at the
    // foot of the apothem on its outer side
    out << "<g fill=\"none\" stroke=\"#404040\" stroke-width=\"" << num(stroke) << "\">\n";
    for (int k = 0; k < 8; ++k) {
        Vec2 a = polar(R, (2.0 * k + 1.0) * kPi / 8.0);
        Vec2 b = polar(R, (2.0 * k + 3.0) * kPi / 8.0);
        Vec2 mid = (a + b) * 0.5;
        for (const auto& [p, q] : {std::pair{a, mid}, std::pair{mid, b}}) {
            out << "<path class=\"triangle\" d=\"M 0.000000 0.000000 L " << num(p.x) << " "
                << num(p.y) << " L " << num(q.x) << " " << num(q.y) << " Z\"/>\n";
        }
    }
    out << "</g>\n";

    // shaded inner octagon: intersection of the four strips of width y swept
    // by the parallel families of the shortest geodesics
    out << "<path class=\"shaded\" fill=\"#b0c4de\" stroke=\"none\" d=\"";
    for (int k = 0; k < 8; ++k) {
        Vec2 v = polar(r_in, (2.0 * k + 1.0) * kPi / 8.0);
        out << (k == 0 ? "M " : "L ") << num(v.x) << " " << num(v.y) << " ";
    }
    out << "Z\"/>\n";

    // eight half-chords of the systolic loops: center to each side midpoint
    out << "<g stroke=\"#c03020\" stroke-width=\"" << num(1.5 * stroke) << "\">\n";
    for (int k = 0; k < 8; ++k) {
        Vec2 m = polar(0.5 * x, (k + 1.0) * kPi / 4.0);
        out << "<line class=\"chord\" x1=\"0.000000\" y1=\"0.000000\" x2=\"" << num(m.x)
            << "\" y2=\"" << num(m.y) << "\"/>\n";
    }
    out << "</g>\n";
    out << "</svg>\n";
    return out.str();
}

void save_octagon_figure(const bolza::BolzaOctagonModel& model, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << octagon_figure_svg(model);
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace flatsurf
