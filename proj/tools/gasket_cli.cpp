// gasket: generate bounded Apollonian gaskets and compute their fine-scale
// statistics. Run `gasket --help` for the command list.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gasket/csv.hpp"
#include "gasket/enumerator.hpp"
#include "gasket/moments.hpp"
#include "gasket/statistics.hpp"

namespace fs = std::filesystem;
using namespace gasket;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Preset {
    double theta1, theta2;
    std::vector<double> t_list;
};

const std::vector<double> kFigureTimes = {8, 9, 10, 11, 12};

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table = {
        {"fig3", {1.8 * kPi / 3, 3.7 * kPi / 3, kFigureTimes}},
        {"fig4", {1.8 * kPi / 3, 3.7 * kPi / 3, {10}}},
        {"fig5", {1.8 * kPi / 3, 3.7 * kPi / 3, kFigureTimes}},
        {"fig6", {1.8 * kPi / 3, 3.7 * kPi / 3, kFigureTimes}},
        {"fig7a", {1.8 * kPi / 3, 3.7 * kPi / 3, {10}}},
        {"fig7b", {kPi / 2, 5 * kPi / 4, {10}}},
    };
    return table;
}

struct RunConfig {
    std::vector<double> quadruple;
    std::optional<double> theta1, theta2;
    std::string preset;
    std::optional<double> t;
    std::vector<double> t_list;
    std::string region = "plane";
    double xi_min = 0.0, xi_max = 10.0, xi_step = 0.05;
    double eps = 0.05;
    double step = 0.1;
    std::string kind = "pair";
    std::vector<std::string> windows;
    std::vector<int> r;
    std::vector<double> beta;
    double delta = kGasketDimension;
    double spacing = 0.0;
    double margin = 0.5;
    double fit_lo = std::log(1e2), fit_hi = std::log(1e5);
    std::string input;
    std::string out;
    std::string output_dir = ".";
    unsigned threads = 0;
    std::size_t capacity = 50'000'000;
};

DescartesQuadruple root_of(const RunConfig& cfg) {
    if (!cfg.quadruple.empty()) {
        if (cfg.quadruple.size() != 4) throw UsageError("--quadruple needs four curvatures");
        return quadruple_from_curvatures(cfg.quadruple[0], cfg.quadruple[1], cfg.quadruple[2], cfg.quadruple[3]);
    }
    GasketSpec spec{presets().at("fig3").theta1, presets().at("fig3").theta2};
    if (!cfg.preset.empty()) {
        const auto it = presets().find(cfg.preset);
        if (it == presets().end()) throw UsageError("unknown preset '" + cfg.preset + "'");
        spec = {it->second.theta1, it->second.theta2};
    }
    if (cfg.theta1 || cfg.theta2) {
        if (!cfg.theta1 || !cfg.theta2) throw UsageError("--theta1 and --theta2 go together");
        spec = {*cfg.theta1, *cfg.theta2};
    }
    return solve_root_quadruple(spec);
}

std::vector<double> times_of(const RunConfig& cfg) {
    std::vector<double> ts = cfg.t_list;
    if (cfg.t) ts = {*cfg.t};
    if (ts.empty() && !cfg.preset.empty() && presets().count(cfg.preset)) ts = presets().at(cfg.preset).t_list;
    if (ts.empty()) throw UsageError("--t or --t-list is required");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] >= 0.0)) throw UsageError("t must be >= 0");
        if (i > 0 && !(ts[i] > ts[i - 1])) throw UsageError("--t-list must be increasing");
    }
    return ts;
}

CenterSet generate(const RunConfig& cfg, double t, EnumerationStats* stats = nullptr) {
    EnumerationOptions opts;
    opts.capacity_limit = cfg.capacity;
    return enumerate(root_of(cfg), t, opts, stats);
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        std::cout.flush();
        return;
    }
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    body(os);
}

// Where one of several per-t outputs goes.
std::string output_for(const RunConfig& cfg, const std::string& stem, double t, bool many) {
    if (!many) return cfg.out;
    return (fs::path(cfg.output_dir) / (stem + "_t" + format_real(t) + ".csv")).string();
}

std::vector<double> xi_grid_of(const RunConfig& cfg) { return make_xi_grid(cfg.xi_min, cfg.xi_max, cfg.xi_step); }

StatOptions stat_options(const RunConfig& cfg) { return {cfg.threads}; }

int cmd_generate(const RunConfig& cfg) {
    const double t = times_of(cfg).back();
    EnumerationStats stats;
    const CenterSet cs = generate(cfg, t, &stats);
    write_to(cfg.out, [&](std::ostream& os) { write_center_csv(os, cs); });
    std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
    log << "circles_emitted=" << stats.circles_emitted << " max_tree_depth=" << stats.max_tree_depth
        << " wall_time=" << stats.wall_time << "\n";
    return 0;
}

int cmd_growth(const RunConfig& cfg) {
    if (cfg.t_list.empty()) throw UsageError("growth needs a nonempty --t-list");
    EnumerationOptions opts;
    opts.capacity_limit = cfg.capacity;
    const auto growth = count_growth(root_of(cfg), cfg.t_list, opts);
    write_to(cfg.out, [&](std::ostream& os) {
        os << "t,N,log_N\n";
        for (const auto& g : growth)
            os << format_real(g.t) << ',' << g.count << ',' << format_real(std::log(static_cast<double>(g.count)))
               << '\n';
    });
    std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
    if (const auto slope = fit_growth_exponent(growth, cfg.fit_lo, cfg.fit_hi))
        log << "slope=" << format_real(*slope) << " fit_window=[" << format_real(cfg.fit_lo) << ","
            << format_real(cfg.fit_hi) << "]\n";
    else
        log << "slope omitted: fewer than two t values in the fit window\n";
    return 0;
}

int cmd_curve(const RunConfig& cfg, const std::string& which) {
    if (which == "deriv" && !cfg.input.empty()) {
        std::ifstream is(cfg.input);
        if (!is) throw UsageError("cannot read " + cfg.input);
        const Curve d = empirical_derivative(read_curve_csv(is), cfg.step);
        write_to(cfg.out, [&](std::ostream& os) { write_curve_csv(os, d); });
        return 0;
    }

    const auto region = Region::parse(cfg.region);
    const auto ts = times_of(cfg);
    const bool many = ts.size() > 1;

    auto xi = xi_grid_of(cfg);
    if (which == "mixed") {
        if (cfg.kind != "pair" && cfg.kind != "nn") throw UsageError("--kind must be pair or nn");
        // The mixed approximants are only defined for xi > 10 eps.
        std::erase_if(xi, [&](double x) { return !(x > 10.0 * cfg.eps); });
    }

    const CenterSet full = generate(cfg, ts.back());
    for (double t : ts) {
        const CenterSet cs = full.truncated(t);
        Curve c;
        if (which == "pair") {
            c = pair_correlation(cs, region, xi, stat_options(cfg));
        } else if (which == "nn") {
            c = nn_spacing(cs, region, xi, stat_options(cfg));
        } else if (which == "deriv") {
            c = empirical_derivative(pair_correlation(cs, region, xi, stat_options(cfg)), cfg.step);
        } else {
            QuadratureOptions q;
            q.margin = cfg.margin;
            q.spacing = cfg.spacing;
            q.threads = cfg.threads;
            const auto m = cfg.kind == "pair" ? mixed_moment_pair(cs, region, xi, cfg.eps, q)
                                              : mixed_moment_nn(cs, region, xi, cfg.eps, q);
            std::cerr << "t=" << format_real(t) << " cell_mass=" << format_real(m.cell_mass)
                      << " max_eps_count=" << m.max_epsilon_count << " spacing=" << format_real(m.spacing) << "\n";
            c = m.curve;
        }
        write_to(output_for(cfg, which == "mixed" ? "mixed_" + cfg.kind : which, t, many),
                 [&](std::ostream& os) { write_curve_csv(os, c); });
    }
    return 0;
}

int cmd_moments(const RunConfig& cfg) {
    const auto region = Region::parse(cfg.region);
    const auto ts = times_of(cfg);
    std::vector<Window> windows;
    for (const auto& w : cfg.windows.empty() ? std::vector<std::string>{"disk:1"} : cfg.windows)
        windows.push_back(Window::parse(w));
    if (!cfg.r.empty() && !cfg.beta.empty()) throw UsageError("give either --r or --beta, not both");

    MomentOptions opts;
    opts.margin = cfg.margin;
    opts.spacing = cfg.spacing;
    opts.threads = cfg.threads;
    opts.delta = cfg.delta;

    const CenterSet full = generate(cfg, ts.back());
    std::vector<MomentEstimate> rows;
    for (double t : ts) {
        const CenterSet cs = full.truncated(t);
        if (!cfg.beta.empty())
            rows.push_back(joint_power_moment(cs, windows, PowerIndex{cfg.beta}, region, opts));
        else
            rows.push_back(joint_indicator_moment(cs, windows, CountIndex{cfg.r.empty() ? std::vector<int>{1} : cfg.r},
                                                  region, opts));
    }
    write_to(cfg.out, [&](std::ostream& os) { write_moment_csv(os, rows); });
    return 0;
}

// One output directory per figure, one CSV per plotted curve.
int cmd_repro(RunConfig cfg, const std::string& fig) {
    const fs::path dir = cfg.output_dir;
    const bool fixed_t = cfg.t.has_value() || !cfg.t_list.empty();
    auto save = [&](const std::string& name, const Curve& c) {
        const auto path = (dir / name).string();
        write_to(path, [&](std::ostream& os) { write_curve_csv(os, c); });
        std::cout << path << "\n";
    };
    const auto xi = xi_grid_of(cfg);
    const auto stat = stat_options(cfg);

    if (fig == "fig7") {
        const double t = fixed_t ? times_of(cfg).back() : 10.0;
        cfg.quadruple.clear();
        cfg.theta1.reset();
        cfg.theta2.reset();
        std::vector<Curve> curves;
        for (const std::string p : {"fig7a", "fig7b"}) {
            cfg.preset = p;
            curves.push_back(pair_correlation(generate(cfg, t), Region::parse(cfg.region), xi, stat));
            save("fig7_" + p + "_t" + format_real(t) + ".csv", curves.back());
        }
        std::cout << "sup_distance[2,10]=" << format_real(sup_distance(curves[0], curves[1], 2.0, 10.0)) << "\n";
        return 0;
    }

    if (cfg.preset.empty() && cfg.quadruple.empty() && !cfg.theta1) cfg.preset = fig;
    if (fig == "fig4") {
        const double t = fixed_t ? times_of(cfg).back() : 10.0;
        const CenterSet cs = generate(cfg, t);
        for (const auto& [name, region] : std::vector<std::pair<std::string, std::string>>{
                 {"plane", "plane"}, {"halfplane", "halfplane:re>0"}, {"quadrant", "quadrant"}})
            save("fig4_" + name + "_t" + format_real(t) + ".csv", pair_correlation(cs, Region::parse(region), xi, stat));
        return 0;
    }

    std::vector<double> ts = fixed_t ? times_of(cfg) : kFigureTimes;
    const auto region = Region::parse(cfg.region);
    const CenterSet full = generate(cfg, ts.back());
    for (double t : ts) {
        const CenterSet cs = full.truncated(t);
        const std::string suffix = "_t" + format_real(t) + ".csv";
        if (fig == "fig3")
            save("fig3_pair" + suffix, pair_correlation(cs, region, xi, stat));
        else if (fig == "fig5")
            save("fig5_deriv" + suffix, empirical_derivative(pair_correlation(cs, region, xi, stat), cfg.step));
        else if (fig == "fig6")
            save("fig6_nn" + suffix, nn_spacing(cs, region, xi, stat));
        else
            throw UsageError("unknown figure '" + fig + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Apollonian gasket generator and fine-scale statistics"};
    app.set_config("--config", "", "Flat key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.allow_config_extras(false);

    RunConfig cfg;
    app.add_option("--quadruple", cfg.quadruple, "Root curvatures b0,b1,b2,b3 with b0 < 0")->delimiter(',');
    app.add_option("--theta1", cfg.theta1, "Tangency angle of C2 (radians)");
    app.add_option("--theta2", cfg.theta2, "Tangency angle of C3 (radians)");
    app.add_option("--preset", cfg.preset, "fig3 | fig4 | fig5 | fig6 | fig7a | fig7b");
    app.add_option("--t", cfg.t, "Threshold exponent: circles with curvature < e^t");
    app.add_option("--t-list", cfg.t_list, "Increasing list of t values")->delimiter(',');
    app.add_option("--region", cfg.region, "plane | halfplane:re>A | disk:X,Y,R | rect:X0,Y0,X1,Y1 | quadrant[:X,Y]")
        ->capture_default_str();
    app.add_option("--xi-min", cfg.xi_min)->capture_default_str();
    app.add_option("--xi-max", cfg.xi_max)->capture_default_str();
    app.add_option("--xi-step", cfg.xi_step)->capture_default_str();
    app.add_option("--eps", cfg.eps, "Mixed-moment epsilon")->capture_default_str();
    app.add_option("--step", cfg.step, "Empirical derivative step")->capture_default_str();
    app.add_option("--kind", cfg.kind, "Mixed moment: pair | nn")->capture_default_str();
    app.add_option("--window", cfg.windows, "Window disk:R or rect:X0,Y0,X1,Y1 (repeatable; default disk:1)");
    app.add_option("--r", cfg.r, "Count multi-index (default 1)")->delimiter(',');
    app.add_option("--beta", cfg.beta, "Power multi-index; selects the power moment")->delimiter(',');
    app.add_option("--delta", cfg.delta, "Exponent used to rescale moments")->capture_default_str();
    app.add_option("--spacing", cfg.spacing, "Quadrature spacing (0: statistic default)")->capture_default_str();
    app.add_option("--margin", cfg.margin, "Quadrature margin around the bounding disk")->capture_default_str();
    app.add_option("--fit-lo", cfg.fit_lo, "Growth fit window start")->capture_default_str();
    app.add_option("--fit-hi", cfg.fit_hi, "Growth fit window end")->capture_default_str();
    app.add_option("--input", cfg.input, "deriv: read this pair curve CSV instead of computing one");
    app.add_option("--out", cfg.out, "Output file (default: standard output)");
    app.add_option("--output-dir", cfg.output_dir, "Directory for multi-curve outputs")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads (0: GASKET_STATS_THREADS or all cores)");
    app.add_option("--capacity", cfg.capacity, "Hard limit on emitted circles")->capture_default_str();

    std::function<int()> action;
    auto* gen = app.add_subcommand("generate", "Write the center set C_t as CSV")->fallthrough();
    gen->callback([&] { action = [&] { return cmd_generate(cfg); }; });
    auto* growth = app.add_subcommand("growth", "Circle counts N(t) and the fitted growth exponent")->fallthrough();
    growth->callback([&] { action = [&] { return cmd_growth(cfg); }; });

    auto* stats = app.add_subcommand("stats", "Fine-scale statistics")->fallthrough()->require_subcommand(1);
    for (const std::string which : {"pair", "nn", "deriv", "mixed"}) {
        stats->add_subcommand(which, which + " curve CSV")->fallthrough()->callback([&, which] {
            action = [&, which] { return cmd_curve(cfg, which); };
        });
    }
    stats->add_subcommand("moments", "Window-count moment report CSV")->fallthrough()->callback([&] {
        action = [&] { return cmd_moments(cfg); };
    });

    auto* repro = app.add_subcommand("repro", "Curves for one of the paper's figures")->fallthrough()->require_subcommand(1);
    for (const std::string fig : {"fig3", "fig4", "fig5", "fig6", "fig7"}) {
        repro->add_subcommand(fig)->fallthrough()->callback([&, fig] {
            action = [&, fig] { return cmd_repro(cfg, fig); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const GridMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const CapacityExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EmptyRegion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Singleton& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
