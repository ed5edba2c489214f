#include "hcurve/render.hpp"

#include <cmath>
#include <cstdio>

#include "hcurve/circle_gon.hpp"
#include "hcurve/error.hpp"
#include "hcurve/io.hpp"

namespace hcurve {

namespace {

std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

// Mathematical point to SVG user coordinates.
std::string xy(Complex z) { return fixed(z.real()) + "," + fixed(-z.imag()); }

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

bool Scene::empty() const {
    return !unit_circle && roots.empty() && gon.empty() && curves.empty() && asymptotes.empty() &&
           legend.empty();
}

Scene instance_scene(const RootMultiset& roots, double theta, const Window& window,
                     bool asymptotes) {
    window.validate();
    const Polynomial p = poly_from_roots(roots);
    const int n = p.degree();
    Scene scene;
    scene.window = window;
    scene.roots = roots.expanded();

    bool on_circle = true;
    try {
        require_on_unit_circle(roots);
    } catch (const DomainError&) {
        on_circle = false;
    }
    if (on_circle) scene.gon = gon_vertices(roots, theta).vertices;

    for (CurveComponent& c : components(p, theta, window, asymptote_fan(n, theta)))
        scene.curves.push_back(std::move(c.polyline));

    if (asymptotes) {
        scene.asymptote_origin = root_centroid(p);
        scene.asymptotes = asymptote_fan(n, theta).angles;
    }
    scene.legend.push_back("n = " + std::to_string(n));
    scene.legend.push_back("theta = " + fixed(theta));
    return scene;
}

std::string render_svg(const Scene& scene) {
    if (!(scene.window.half_width > 0.0)) throw DomainError("degenerate window");
    if (scene.empty()) throw DomainError("scene has nothing to draw");

    const double hw = scene.window.half_width;
    const Complex c = scene.window.center;
    const auto& st = scene.style;
    const double marker = st.marker_size * hw;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<!-- y axis flipped: user y = -Im(z), counterclockwise is positive -->\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"" +
         fixed(c.real() - hw) + " " + fixed(-c.imag() - hw) + " " + fixed(2 * hw) + " " +
         fixed(2 * hw) + "\">\n";
    s += "<rect x=\"" + fixed(c.real() - hw) + "\" y=\"" + fixed(-c.imag() - hw) + "\" width=\"" +
         fixed(2 * hw) + "\" height=\"" + fixed(2 * hw) + "\" fill=\"#ffffff\"/>\n";

    if (scene.unit_circle)
        s += "<circle class=\"unit-circle\" cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\" "
             "fill=\"none\" stroke=\"" +
             st.circle_color + "\" stroke-width=\"" + fixed(st.circle_width * hw) + "\"/>\n";

    if (scene.gon.size() >= 2) {
        s += "<polygon class=\"gon\" fill=\"none\" stroke=\"" + st.gon_color +
             "\" stroke-dasharray=\"" + fixed(2 * marker) + "," + fixed(marker) +
             "\" stroke-width=\"" + fixed(st.circle_width * hw) + "\" points=\"";
        for (std::size_t i = 0; i < scene.gon.size(); ++i) {
            if (i) s += ' ';
            s += xy(scene.gon[i]);
        }
        s += "\"/>\n";
    }

    for (const Polyline& line : scene.curves) {
        if (line.points.empty()) continue;
        s += std::string("<") + (line.closed ? "polygon" : "polyline") +
             " class=\"curve\" fill=\"none\" stroke=\"" + st.curve_color + "\" stroke-width=\"" +
             fixed(st.curve_width * hw) + "\" stroke-linejoin=\"round\" points=\"";
        for (std::size_t i = 0; i < line.points.size(); ++i) {
            if (i) s += ' ';
            s += xy(line.points[i]);
        }
        s += "\"/>\n";
    }

    const double ray = 3.0 * hw + std::abs(scene.asymptote_origin - c);
    for (double a : scene.asymptotes) {
        const Complex from = scene.asymptote_origin;
        const Complex to = from + std::polar(ray, a);
        s += "<line class=\"asymptote\" x1=\"" + fixed(from.real()) + "\" y1=\"" +
             fixed(-from.imag()) + "\" x2=\"" + fixed(to.real()) + "\" y2=\"" + fixed(-to.imag()) +
             "\" stroke=\"" + st.asymptote_color + "\" stroke-width=\"" +
             fixed(st.circle_width * hw) + "\" stroke-dasharray=\"" + fixed(marker) + "," +
             fixed(marker) + "\"/>\n";
    }

    // Filled disks drawn as two arcs.
    const double r = 0.5 * marker;
    for (const Complex& z : scene.roots) {
        s += "<path class=\"root\" fill=\"" + st.root_color + "\" d=\"M " +
             fixed(z.real() - r) + " " + fixed(-z.imag()) + " a " + fixed(r) + " " + fixed(r) +
             " 0 1 0 " + fixed(2 * r) + " 0 a " + fixed(r) + " " + fixed(r) + " 0 1 0 " +
             fixed(-2 * r) + " 0 z\"/>\n";
    }

    for (const Complex& z : scene.gon) {
        const double x = z.real();
        const double y = -z.imag();
        s += "<path class=\"gon-vertex\" fill=\"none\" stroke=\"" + st.gon_color +
             "\" stroke-width=\"" + fixed(st.circle_width * hw) + "\" d=\"M " + fixed(x - r) +
             " " + fixed(y - r) + " L " + fixed(x + r) + " " + fixed(y + r) + " M " +
             fixed(x - r) + " " + fixed(y + r) + " L " + fixed(x + r) + " " + fixed(y - r) +
             "\"/>\n";
    }

    const double font = 0.05 * hw;
    for (std::size_t i = 0; i < scene.legend.size(); ++i) {
        s += "<text class=\"legend\" x=\"" + fixed(c.real() - hw + font) + "\" y=\"" +
             fixed(-c.imag() - hw + font * (1.5 + 1.3 * static_cast<double>(i))) +
             "\" font-family=\"sans-serif\" font-size=\"" + fixed(font) + "\">" +
             escape(scene.legend[i]) + "</text>\n";
    }

    s += "</svg>\n";
    return s;
}

std::string scene_to_json(const Scene& scene) {
    JsonWriter w;
    w.begin_object();
    w.key("window").begin_object();
    w.key("center").point(scene.window.center);
    w.key("half_width").value(scene.window.half_width);
    w.key("cells").value(scene.window.cells);
    w.end_object();
    w.key("unit_circle").value(scene.unit_circle);
    w.key("roots").begin_array();
    for (const Complex& z : scene.roots) w.point(z);
    w.end_array();
    w.key("gon").begin_array();
    for (const Complex& z : scene.gon) w.point(z);
    w.end_array();
    w.key("curves").begin_array();
    for (const Polyline& line : scene.curves) {
        w.begin_object().key("closed").value(line.closed).key("points").begin_array();
        for (const Complex& z : line.points) w.point(z);
        w.end_array().end_object();
    }
    w.end_array();
    w.key("asymptote_origin").point(scene.asymptote_origin);
    w.key("asymptotes").begin_array();
    for (double a : scene.asymptotes) w.value(a);
    w.end_array();
    w.key("legend").begin_array();
    for (const auto& l : scene.legend) w.value(std::string_view(l));
    w.end_array();
    w.end_object();
    return w.str();
}

} // namespace hcurve
