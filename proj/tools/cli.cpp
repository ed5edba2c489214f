#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "hcurve/circle_gon.hpp"
#include "hcurve/error.hpp"
#include "hcurve/io.hpp"
#include "hcurve/necklace.hpp"
#include "hcurve/random.hpp"
#include "hcurve/render.hpp"
#include "hcurve/tangents.hpp"
#include "hcurve/tracer.hpp"

namespace hcurve::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string roots_file;
    std::vector<std::string> roots_angles;
    int random_n = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string theta = "0";
    std::optional<double> tol;
    std::optional<double> window;
    std::optional<int> cells;
    std::string out;
    std::string sidecar;
    std::string format = "json";
    int batch = 0;
    int sweep = 0;
    bool signed_angles = false;
    bool asymptotes = false;
};

// Radians only: the whole token must be a finite number.
double parse_radians(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || !std::isfinite(v))
        throw UsageError("angles are plain radians; cannot read '" + text + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
    if (!f) throw UsageError("write failed: " + path);
}

RootMultiset random_instance(int n, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    return random_unit_roots(rng, n);
}

RootMultiset load_roots(const Options& o) {
    const int sources =
        int(!o.roots_file.empty()) + int(!o.roots_angles.empty()) + int(o.random_n > 0);
    if (sources != 1)
        throw UsageError("give exactly one of --roots FILE, --roots-angles A..., --random N");
    if (!o.roots_file.empty()) return parse_roots_json(read_file(o.roots_file));
    if (!o.roots_angles.empty()) {
        std::vector<double> angles;
        for (const auto& a : o.roots_angles) angles.push_back(parse_radians(a));
        return RootMultiset::on_unit_circle(angles);
    }
    if (!o.seed_given) throw UsageError("--random needs --seed");
    return random_instance(o.random_n, o.seed);
}

struct Emitter {
    JsonWriter w;
    bool signed_angles = false;

    double angle(double a) const { return signed_angles ? signed_angle(a) : a; }
    void angles(const std::vector<double>& list) {
        w.begin_array();
        for (double a : list) w.value(angle(a));
        w.end_array();
    }
    void pairs(const Matching& m) {
        w.begin_array();
        for (const auto& [a, b] : m.pairs()) w.begin_array().value(a).value(b).end_array();
        w.end_array();
    }
};

void emit_report(Emitter& e, const VerificationReport& r, double theta, int n) {
    auto& w = e.w;
    w.begin_object();
    w.key("pass").value(r.pass);
    w.key("n").value(n);
    w.key("theta").value(theta);
    w.key("omega").value(e.angle(r.omega.value()));
    w.key("max_distance").value(r.max_distance);
    w.key("zeros").begin_array();
    for (const CircleZero& z : r.zeros.zeros) w.value(e.angle(z.angle));
    w.end_array();
    w.key("multiplicities").begin_array();
    for (const CircleZero& z : r.zeros.zeros) w.value(z.multiplicity);
    w.end_array();
    w.key("predicted");
    e.angles(r.predicted);
    w.key("gon");
    e.angles(r.gon.angles());
    w.key("unmatched_predicted");
    e.angles(r.unmatched_predicted);
    w.key("unmatched_found");
    e.angles(r.unmatched_found);
    w.end_object();
}

int cmd_verify(const Options& o, std::ostream& out) {
    const double theta = parse_radians(o.theta);
    const double tol = o.tol.value_or(kVerifyTolerance);
    Emitter e{{}, o.signed_angles};
    if (o.batch > 0) {
        if (o.random_n <= 0 || !o.seed_given)
            throw UsageError("--batch needs --random N --seed S");
        bool all = true;
        double worst = 0.0;
        e.w.begin_object();
        e.w.key("instances").begin_array();
        for (int i = 0; i < o.batch; ++i) {
            const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
            const RootMultiset roots = random_instance(o.random_n, seed);
            const VerificationReport r = verify_gon(roots, theta, tol);
            all = all && r.pass;
            worst = std::max(worst, r.max_distance);
            e.w.begin_object();
            e.w.key("seed").value(seed);
            e.w.key("pass").value(r.pass);
            e.w.key("max_distance").value(r.max_distance);
            e.w.end_object();
        }
        e.w.end_array();
        e.w.key("pass").value(all);
        e.w.key("max_distance").value(worst);
        e.w.end_object();
        out << e.w.str() << '\n';
        return all ? kOk : kVerificationFailed;
    }
    const RootMultiset roots = load_roots(o);
    const VerificationReport r = verify_gon(roots, theta, tol);
    emit_report(e, r, theta, roots.degree());
    out << e.w.str() << '\n';
    return r.pass ? kOk : kVerificationFailed;
}

Window plane_window(const Options& o, const Polynomial& p, double default_half_width) {
    Window w;
    if (o.window) {
        w.half_width = *o.window;
    } else {
        w.center = root_centroid(p);
        w.half_width = default_half_width;
    }
    w.cells = o.cells.value_or(512);
    w.validate();
    return w;
}

int cmd_trace(const Options& o, std::ostream& out) {
    const double theta = parse_radians(o.theta);
    const RootMultiset roots = load_roots(o);
    const Polynomial p = poly_from_roots(roots);
    const Window window = plane_window(o, p, 1.25 * asymptote_validity_radius(p));
    const auto comps = components(p, theta, window, asymptote_fan(p.degree(), theta));

    if (o.format == "csv") {
        out << "component,index,re,im\n";
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& points = comps[c].polyline.points;
            for (std::size_t i = 0; i < points.size(); ++i)
                out << c << ',' << i << ',' << format_double(points[i].real()) << ','
                    << format_double(points[i].imag()) << '\n';
        }
        return kOk;
    }

    JsonWriter w;
    w.begin_object();
    w.key("theta").value(theta);
    w.key("window").begin_object();
    w.key("center").point(window.center);
    w.key("half_width").value(window.half_width);
    w.key("cells").value(window.cells);
    w.end_object();
    w.key("components").begin_array();
    for (const CurveComponent& c : comps) {
        w.begin_object();
        w.key("ends");
        if (c.ends)
            w.begin_array().value((*c.ends)[0]).value((*c.ends)[1]).end_array();
        else
            w.null();
        w.key("ambiguous").value(c.ambiguous);
        w.key("closed").value(c.polyline.closed);
        w.key("points").begin_array();
        for (const Complex& z : c.polyline.points) w.point(z);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    out << w.str() << '\n';
    return kOk;
}

int cmd_matching(const Options& o, std::ostream& out) {
    const double theta = parse_radians(o.theta);
    const RootMultiset roots = load_roots(o);
    const Polynomial p = poly_from_roots(roots);
    const double radius = asymptote_validity_radius(p);
    const Matching m = matching(p, theta, radius);
    Emitter e{{}, o.signed_angles};
    auto& w = e.w;
    w.begin_object();
    w.key("n").value(p.degree());
    w.key("theta").value(theta);
    w.key("radius").value(radius);
    w.key("fan");
    e.angles(asymptote_fan(p.degree(), theta).angles);
    w.key("pairs");
    e.pairs(m);
    w.key("noncrossing").value(m.is_noncrossing());
    w.end_object();
    out << w.str() << '\n';
    return kOk;
}

int cmd_necklace(const Options& o, std::ostream& out) {
    const RootMultiset roots = load_roots(o);
    const Polynomial p = poly_from_roots(roots);
    NecklaceOptions options;
    if (o.tol) options.root_tol = *o.tol;
    const Necklace necklace = build_necklace(p, options);
    Emitter e{{}, false};
    auto& w = e.w;
    w.begin_object();
    w.key("n").value(p.degree());
    w.key("critical_thetas").begin_array();
    for (double t : necklace.critical_thetas) w.value(t);
    w.end_array();
    w.key("beads").begin_array();
    for (const Bead& b : necklace.beads) {
        w.begin_object();
        w.key("interval").begin_array().value(b.start).value(b.end).end_array();
        w.key("pairs");
        e.pairs(b.matching);
        w.end_object();
    }
    w.end_array();
    bool clean = true;
    if (o.sweep > 0) {
        const auto violations = sweep_check(p, necklace, o.sweep);
        clean = violations.empty();
        w.key("sweep").begin_object();
        w.key("samples").value(o.sweep);
        w.key("violations").begin_array();
        for (const SweepViolation& v : violations) w.value(v.theta);
        w.end_array();
        w.end_object();
    }
    w.end_object();
    out << w.str() << '\n';
    return clean ? kOk : kVerificationFailed;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

int cmd_tangents(const Options& o, std::ostream& out) {
    const double theta = parse_radians(o.theta);
    const RootMultiset roots = load_roots(o);
    const auto reports = tangency_reports(roots, theta, o.tol.value_or(kTangentTolerance));
    Emitter e{{}, o.signed_angles};
    auto& w = e.w;
    bool ok = true;
    w.begin_array();
    for (const TangentReport& r : reports) {
        ok = ok && r.equivalence != Verdict::Fails;
        w.begin_object();
        w.key("root").point(r.root);
        w.key("multiplicity").value(r.multiplicity);
        w.key("directions").begin_array();
        for (double d : r.directions) w.value(d);
        w.end_array();
        w.key("circle_tangent_dir").value(r.circle_tangent_dir);
        w.key("tangent_distance").value(r.tangent_distance);
        w.key("gon_distance").value(r.gon_distance);
        w.key("coincides").value(r.coincides);
        w.key("on_gon").value(r.on_gon);
        w.key("inconclusive").value(r.inconclusive);
        w.key("equivalence").value(verdict_name(r.equivalence));
        w.end_object();
    }
    w.end_array();
    out << w.str() << '\n';
    return ok ? kOk : kVerificationFailed;
}

std::vector<double> chord_lengths(const std::vector<Complex>& gon) {
    std::vector<double> out;
    for (std::size_t i = 0; i < gon.size() && gon.size() >= 2; ++i)
        out.push_back(std::abs(gon[(i + 1) % gon.size()] - gon[i]));
    return out;
}

void emit_scene_summary(JsonWriter& w, const Scene& scene, const std::string& path) {
    w.key("curves").value(static_cast<int>(scene.curves.size()));
    w.key("roots").value(static_cast<int>(scene.roots.size()));
    w.key("gon_vertices").value(static_cast<int>(scene.gon.size()));
    w.key("out");
    if (path.empty())
        w.null();
    else
        w.value(std::string_view(path));
}

int cmd_render(const Options& o, std::ostream& out) {
    if (o.out.empty()) throw UsageError("render needs --out FILE.svg");
    const double theta = parse_radians(o.theta);
    const RootMultiset roots = load_roots(o);
    Window window;
    window.half_width = o.window.value_or(std::max(2.0, 1.5 * roots.max_modulus()));
    window.cells = o.cells.value_or(512);
    const Scene scene = instance_scene(roots, theta, window, o.asymptotes);
    write_file(o.out, render_svg(scene));
    if (!o.sidecar.empty()) write_file(o.sidecar, scene_to_json(scene) + "\n");
    JsonWriter w;
    w.begin_object();
    emit_scene_summary(w, scene, o.out);
    w.end_object();
    out << w.str() << '\n';
    return kOk;
}

int cmd_demo(const Options& o, std::ostream& out) {
    constexpr int kDegree = 7;
    const std::uint64_t seed = o.seed_given ? o.seed : 42;
    const double theta = parse_radians(o.theta);
    const RootMultiset roots = random_instance(kDegree, seed);
    const VerificationReport report = verify_gon(roots, theta);

    Window window;
    window.half_width = o.window.value_or(2.0);
    window.cells = o.cells.value_or(512);
    const Scene scene = instance_scene(roots, theta, window, o.asymptotes);
    if (!o.out.empty()) write_file(o.out, render_svg(scene));
    if (!o.sidecar.empty()) write_file(o.sidecar, scene_to_json(scene) + "\n");

    const auto chords = chord_lengths(scene.gon);
    const auto [lo, hi] = std::minmax_element(chords.begin(), chords.end());

    Emitter e{{}, o.signed_angles};
    auto& w = e.w;
    w.begin_object();
    w.key("seed").value(seed);
    w.key("n").value(kDegree);
    w.key("theta").value(theta);
    w.key("root_angles").begin_array();
    for (const Complex& z : roots.expanded()) w.value(e.angle(arg(z)));
    w.end_array();
    emit_scene_summary(w, scene, o.out);
    w.key("chords").begin_array();
    for (double c : chords) w.value(c);
    w.end_array();
    w.key("chord_spread").value(chords.empty() ? 0.0 : *hi - *lo);
    w.key("verification");
    emit_report(e, report, theta, kDegree);
    w.end_object();
    out << w.str() << '\n';
    return report.pass ? kOk : kVerificationFailed;
}

void add_instance_options(CLI::App* app, Options& o) {
    app->add_option("--roots", o.roots_file, "JSON file {\"roots\": [[re, im], ...]}");
    app->add_option("--roots-angles", o.roots_angles, "Root angles on the unit circle (radians)")
        ->expected(1, -1);
    app->add_option("--random", o.random_n, "Number of seeded random roots on the unit circle")
        ->check(CLI::Range(1, 1000));
    app->add_option_function<std::uint64_t>(
        "--seed",
        [&o](const std::uint64_t& s) {
            o.seed = s;
            o.seed_given = true;
        },
        "Seed for --random");
}

void add_theta(CLI::App* app, Options& o) {
    app->add_option("--theta", o.theta, "Curve parameter theta (radians)");
}

void add_signed(CLI::App* app, Options& o) {
    app->add_flag("--signed-angles", o.signed_angles, "Emit angles in (-pi, pi] instead of [0, 2pi)");
}

void add_plane(CLI::App* app, Options& o) {
    app->add_option("--window", o.window, "Half-width of the square window")
        ->check(CLI::PositiveNumber);
    app->add_option("--cells", o.cells, "Grid cells per axis")->check(CLI::Range(8, 1 << 15));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harmonic algebraic curves Im(exp(-i theta) P(z)) = 0 for polynomials with roots "
                 "on the unit circle",
                 "hcurve"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "Check that the curve meets the unit circle in the roots and the gon");
    add_instance_options(verify, o);
    add_theta(verify, o);
    add_signed(verify, o);
    verify->add_option("--tol", o.tol, "Matching tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--batch", o.batch, "Verify N seeded instances (seeds S..S+N-1)")
        ->check(CLI::Range(1, 1000000));

    auto* trace_cmd = app.add_subcommand("trace", "Trace the curve on a grid and tag its components");
    add_instance_options(trace_cmd, o);
    add_theta(trace_cmd, o);
    add_plane(trace_cmd, o);
    trace_cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* matching_cmd = app.add_subcommand("matching", "Asymptote matching by continuation");
    add_instance_options(matching_cmd, o);
    add_theta(matching_cmd, o);
    add_signed(matching_cmd, o);

    auto* necklace_cmd = app.add_subcommand("necklace", "Critical thetas and the matching on each interval");
    add_instance_options(necklace_cmd, o);
    necklace_cmd->add_option("--tol", o.tol, "Tolerance for |P(c)| at critical points")
        ->check(CLI::PositiveNumber);
    necklace_cmd->add_option("--sweep", o.sweep, "Check N uniformly spaced thetas against the beads")
        ->check(CLI::Range(1, 100000));

    auto* tangents_cmd = app.add_subcommand("tangents", "Tangent directions at the roots");
    add_instance_options(tangents_cmd, o);
    add_theta(tangents_cmd, o);
    tangents_cmd->add_option("--tol", o.tol, "Tangency tolerance")->check(CLI::PositiveNumber);

    auto* render_cmd = app.add_subcommand("render", "Write an SVG figure of one instance");
    add_instance_options(render_cmd, o);
    add_theta(render_cmd, o);
    add_plane(render_cmd, o);
    render_cmd->add_option("--out", o.out, "SVG output path");
    render_cmd->add_option("--sidecar", o.sidecar, "Scene JSON output path");
    render_cmd->add_flag("--asymptotes", o.asymptotes, "Draw the asymptote rays");

    auto* demo = app.add_subcommand("demo", "Seven random roots at theta = 0, verified and drawn");
    demo->add_option_function<std::uint64_t>(
        "--seed",
        [&o](const std::uint64_t& s) {
            o.seed = s;
            o.seed_given = true;
        },
        "Seed for the roots (default 42)");
    add_theta(demo, o);
    add_plane(demo, o);
    add_signed(demo, o);
    demo->add_option("--out", o.out, "SVG output path");
    demo->add_option("--sidecar", o.sidecar, "Scene JSON output path");
    demo->add_flag("--asymptotes", o.asymptotes, "Draw the asymptote rays");

    try {
        std::vector<std::string> reversed = args;
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(o, out);
        if (trace_cmd->parsed()) return cmd_trace(o, out);
        if (matching_cmd->parsed()) return cmd_matching(o, out);
        if (necklace_cmd->parsed()) return cmd_necklace(o, out);
        if (tangents_cmd->parsed()) return cmd_tangents(o, out);
        if (render_cmd->parsed()) return cmd_render(o, out);
        if (demo->parsed()) return cmd_demo(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

} // namespace hcurve::cli
