#include "flatsurf/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flatsurf/errors.hpp"

namespace flatsurf {

using nlohmann::json;

std::string surface_to_json(const ConeSurface& surface) {
    json j;
    j["polygons"] = json::array();
    for (const auto& p : surface.polygons()) {
        json verts = json::array();
        for (const Vec2& v : p.vertices) verts.push_back({v.x, v.y});
        j["polygons"].push_back({{"id", p.id}, {"vertices", verts}});
    }
    j["gluings"] = json::array();
    for (const auto& g : surface.gluings()) {
        // gluings are stored by polygon index; emit the user-facing ids
        int ida = surface.polygon(g.a.polygon).id;
        int idb = surface.polygon(g.b.polygon).id;
        j["gluings"].push_back({{"a", {ida, g.a.edge}}, {"b", {idb, g.b.edge}}});
    }
    j["tolerance"] = surface.tolerance();
    return j.dump(2);
}

ConeSurface surface_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("bad surface JSON: ") + e.what());
    }
    try {
        std::vector<EuclideanPolygon> polygons;
        for (const auto& jp : j.at("polygons")) {
            EuclideanPolygon p;
            p.id = jp.at("id").get<int>();
            for (const auto& jv : jp.at("vertices"))
                p.vertices.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
            polygons.push_back(std::move(p));
        }
        std::vector<EdgeGluing> gluings;
        for (const auto& jg : j.at("gluings")) {
            EdgeGluing g;
            g.a = {jg.at("a").at(0).get<int>(), jg.at("a").at(1).get<int>()};
            g.b = {jg.at("b").at(0).get<int>(), jg.at("b").at(1).get<int>()};
            if (jg.contains("reversed")) g.reversed = jg.at("reversed").get<bool>();
            gluings.push_back(g);
        }
        double eps = j.value("tolerance", 1e-9);
        return build_surface(std::move(polygons), std::move(gluings), eps);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad surface JSON: ") + e.what());
    }
}

ConeSurface load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return surface_from_json(ss.str());
}

void save_surface(const ConeSurface& surface, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << surface_to_json(surface) << "\n";
}

}  // namespace flatsurf
