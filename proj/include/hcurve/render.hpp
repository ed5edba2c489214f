#pragma once

#include <string>
#include <vector>

#include "hcurve/polynomial.hpp"
#include "hcurve/tracer.hpp"

namespace hcurve {

struct Style {
    double curve_width = 0.006;   // in units of the window half-width
    double circle_width = 0.004;
    double marker_size = 0.018;
    std::string curve_color = "#000000";
    std::string circle_color = "#808080";
    std::string root_color = "#000000";
    std::string gon_color = "#000000";
    std::string asymptote_color = "#b0b0b0";
};

/// Everything drawn in one figure. Layers are emitted in a fixed order:
/// unit circle, gon polygon, curves, asymptote rays, roots, gon vertices, legend.
struct Scene {
    Window window;
    bool unit_circle = true;
    std::vector<Complex> roots;
    std::vector<Complex> gon;  // vertices in angular order
    std::vector<Polyline> curves;
    Complex asymptote_origin{0.0, 0.0};
    std::vector<double> asymptotes;  // ray directions
    std::vector<std::string> legend;
    Style style;

    bool empty() const;
};

/// Scene for one instance: unit circle, roots, traced curve components and,
/// when every root lies on the unit circle, the gon and its vertices.
/// Asymptote rays start at the root centroid when requested.
Scene instance_scene(const RootMultiset& roots, double theta, const Window& window,
                     bool asymptotes = false);

/// SVG 1.1 document. Coordinates carry 6 decimals and the mathematical y axis
/// is mapped to -y, so identical scenes always give identical bytes.
std::string render_svg(const Scene& scene);

/// Scene as JSON, for regenerating a figure.
std::string scene_to_json(const Scene& scene);

} // namespace hcurve
