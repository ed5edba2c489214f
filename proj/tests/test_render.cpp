#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcurve/random.hpp"
#include "hcurve/render.hpp"

using namespace hcurve;

namespace {

int count(const std::string& text, const std::string& needle) {
    int c = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
    return c;
}

std::vector<std::pair<double, double>> polygon_points(const std::string& svg) {
    const std::regex re("class=\"gon\"[^>]*points=\"([^\"]*)\"");
    std::smatch m;
    std::vector<std::pair<double, double>> out;
    if (!std::regex_search(svg, m, re)) return out;
    std::string list = m[1];
    double x = 0, y = 0;
    int consumed = 0;
    const char* p = list.c_str();
    while (std::sscanf(p, "%lf,%lf%n", &x, &y, &consumed) == 2) {
        out.emplace_back(x, y);
        p += consumed;
    }
    return out;
}

Scene small_scene() {
    Scene s;
    s.window = Window{{0, 0}, 1.5, 64};
    s.roots = {{1, 0}, {-1, 0}};
    s.gon = {{0, 1}, {0, -1}};
    return s;
}

} // namespace

TEST_SUITE("render") {

TEST_CASE("element counts") {
    const std::string svg = render_svg(small_scene());
    CHECK(count(svg, "<circle") == 1);
    CHECK(count(svg, "class=\"root\"") == 2);
    CHECK(count(svg, "class=\"gon-vertex\"") == 2);
    CHECK(count(svg, "<polyline") == 0);
    CHECK(svg.find("viewBox=\"-1.500000 -1.500000 3.000000 3.000000\"") != std::string::npos);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("y axis is flipped") {
    Scene s = small_scene();
    s.roots = {{0.25, 0.5}};
    const std::string svg = render_svg(s);
    CHECK(svg.find("M 0.236500 -0.500000") != std::string::npos);
}

TEST_CASE("determinism") {
    Xorshift64Star rng(42);
    const RootMultiset roots = random_unit_roots(rng, 7);
    const Scene a = instance_scene(roots, 0.0, Window{{0, 0}, 2.0, 256}, true);
    const Scene b = instance_scene(roots, 0.0, Window{{0, 0}, 2.0, 256}, true);
    CHECK(render_svg(a) == render_svg(b));
    CHECK(scene_to_json(a) == scene_to_json(b));
}

TEST_CASE("instance scene for seven roots") {
    Xorshift64Star rng(42);
    const RootMultiset roots = random_unit_roots(rng, 7);
    const Scene scene = instance_scene(roots, 0.0, Window{{0, 0}, 2.0, 512});
    const std::string svg = render_svg(scene);
    CHECK(count(svg, "class=\"curve\"") == 7);
    CHECK(count(svg, "class=\"root\"") == 7);
    CHECK(count(svg, "class=\"gon-vertex\"") == 7);
    CHECK(count(svg, "class=\"asymptote\"") == 0);

    const auto pts = polygon_points(svg);
    REQUIRE(pts.size() == 7);
    double lo = INFINITY, hi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& [x0, y0] = pts[i];
        const auto& [x1, y1] = pts[(i + 1) % pts.size()];
        const double len = std::hypot(x1 - x0, y1 - y0);
        lo = std::min(lo, len);
        hi = std::max(hi, len);
    }
    CHECK(hi - lo <= 1e-4 * 2 * scene.window.half_width);
}

TEST_CASE("asymptote rays") {
    Xorshift64Star rng(1);
    const Scene scene = instance_scene(random_unit_roots(rng, 3), 0.4, Window{{0, 0}, 2.0, 64}, true);
    CHECK(count(render_svg(scene), "class=\"asymptote\"") == 6);
}

TEST_CASE("off-circle roots have no gon") {
    const RootMultiset roots(std::vector<Complex>{{0.5, 0}, {-1, 0.3}});
    const Scene scene = instance_scene(roots, 0.2, Window{{0, 0}, 2.0, 64});
    CHECK(scene.gon.empty());
    CHECK(count(render_svg(scene), "class=\"gon\"") == 0);
}

TEST_CASE("errors") {
    Scene s = small_scene();
    s.window.half_width = 0.0;
    CHECK_THROWS_AS(render_svg(s), DomainError);
    Scene empty;
    empty.unit_circle = false;
    CHECK_THROWS_AS(render_svg(empty), DomainError);
}

TEST_CASE("legend text is escaped") {
    Scene s = small_scene();
    s.legend = {"a < b & c"};
    CHECK(render_svg(s).find("a &lt; b &amp; c") != std::string::npos);
}

TEST_CASE("scene sidecar round-trips through a JSON parser") {
    Scene s = small_scene();
    s.curves.push_back({{{0.1, 0.2}, {0.3, 0.4}}, false});
    const auto doc = nlohmann::json::parse(scene_to_json(s));
    CHECK(doc["window"]["half_width"].get<double>() == 1.5);
    CHECK(doc["roots"].size() == 2);
    CHECK(doc["curves"][0]["points"][1][1].get<double>() == 0.4);
}

}
