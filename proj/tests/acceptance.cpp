// Acceptance suite: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gasket/hyperbolic.hpp"
#include "gasket/moments.hpp"
#include "gasket/statistics.hpp"
#include "oracle.hpp"

using namespace gasket;

namespace {

// Tolerances.
constexpr double kSlopeLo = 1.28, kSlopeHi = 1.33;
constexpr double kGrowthBudgetSeconds = 60.0;
constexpr double kSeparationTol = 1e-9;
constexpr double kDescartesTol = 1e-9;
constexpr double kRatioTol = 1e-12;
constexpr double kSlackCells = 2.0;
constexpr double kSupTol = 0.05;
constexpr double kMomentRelTol = 0.15;

const GasketSpec kFigureSpec{1.8 * kPi / 3, 3.7 * kPi / 3};
const GasketSpec kSymmetricSpec{2 * kPi / 3, 4 * kPi / 3};
const GasketSpec kOtherSpec{kPi / 2, 5 * kPi / 4};

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome growth_exponent() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> ts;
    const double lo = std::log(1e2), hi = std::log(1e5);
    for (int k = 0; k <= 60; ++k) ts.push_back(lo + (hi - lo) * k / 60.0);
    const auto growth = count_growth(quadruple_from_curvatures(-1, 2, 2, 3), ts);
    const auto slope = fit_growth_exponent(growth, lo, hi);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = slope && *slope >= kSlopeLo && *slope <= kSlopeHi && secs <= kGrowthBudgetSeconds;
    return {ok, fmt("slope %.6f over %zu t values, N(log 1e5) = %zu, %.2f s", slope.value_or(NAN), ts.size(),
                    growth.back().count, secs)};
}

Outcome support_gap() {
    const auto xi = make_xi_grid(0.0, 2.0, 0.01);
    const Region regions[] = {Region::plane(), Region::parse("halfplane:re>0"), Region::parse("quadrant")};
    std::size_t curves = 0;
    double worst = 0.0;
    for (const auto& [root, t_max] : {std::pair{solve_root_quadruple(kFigureSpec), 12.0},
                                      std::pair{quadruple_from_curvatures(-1, 2, 2, 3), 12.0}}) {
        const auto full = enumerate(root, t_max);
        for (double t : {8.0, 9.0, 10.0, 11.0, 12.0}) {
            const auto cs = full.truncated(t);
            for (const auto& e : regions) {
                for (const auto& c : {pair_correlation(cs, e, xi), nn_spacing(cs, e, xi)}) {
                    ++curves;
                    for (double v : c.values) worst = std::max(worst, v);
                }
            }
        }
    }
    return {worst == 0.0, fmt("max value on [0,2] over %zu curves = %g", curves, worst)};
}

Outcome hyperbolic_separation() {
    const auto cs = enumerate(solve_root_quadruple(kSymmetricSpec), std::log(100.0));
    double worst = 1e300, worst_gap = 1e300;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].curvature < 0) continue;  // bounding hemisphere contains the others
        const H3Point a = *apex_of_circle(Circle(cs[i].center, cs[i].curvature)).point;
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (cs[j].curvature < 0) continue;
            const H3Point b = *apex_of_circle(Circle(cs[j].center, cs[j].curvature)).point;
            worst = std::min(worst, cosh_distance(a, b));
            worst_gap = std::min(worst_gap, std::abs(a.z - b.z) - a.r - b.r);
            ++pairs;
        }
    }
    const bool ok = worst >= 3.0 - kSeparationTol && worst_gap >= -kSeparationTol;
    return {ok, fmt("%zu circles, %zu pairs, min cosh d = %.15f, min horizontal gap = %.3g", cs.size(), pairs, worst,
                    worst_gap)};
}

Outcome descartes_residuals() {
    std::size_t visited = 0;
    double worst = 0.0;
    for (const auto& root : {quadruple_from_curvatures(-1, 2, 2, 3), solve_root_quadruple(kFigureSpec),
                             solve_root_quadruple(kSymmetricSpec)}) {
        walk_gasket(root, std::log(1e5), [](const Circle&) {}, [&](const DescartesQuadruple& q, std::size_t) {
            ++visited;
            double sq = 0.0, csq = 0.0;
            for (const auto& c : q.circles) {
                sq += c.curvature * c.curvature;
                csq += std::norm(c.curvature_center());
            }
            worst = std::max({worst, q.descartes_residual() / std::max(1.0, sq),
                              q.complex_descartes_residual() / std::max(1.0, csq)});
        });
    }
    return {worst <= kDescartesTol, fmt("%zu quadruples, worst relative residual %.3g", visited, worst)};
}

Outcome oracle_equivalence() {
    std::vector<CenterSet> sets;
    sets.push_back(enumerate(quadruple_from_curvatures(-1, 2, 2, 3), 6.0));
    sets.push_back(enumerate(solve_root_quadruple(kFigureSpec), 5.6));
    sets.push_back(enumerate(solve_root_quadruple(kOtherSpec), 5.0));
    sets.push_back(enumerate(solve_root_quadruple(kSymmetricSpec), 5.0));
    const Region regions[] = {Region::plane(), Region::parse("halfplane:re>0"), Region::parse("quadrant"),
                              Region::parse("disk:0.2,-0.1,0.6")};
    const Window windows[] = {Window::disk(1.0), Window::disk(4.0), Window::rect({-3, -1}, {2, 6})};
    const auto xi = make_xi_grid(0.0, 12.0, 0.05);
    std::size_t comparisons = 0, mismatches = 0, points = 0;
    for (const auto& cs : sets) {
        if (cs.size() > 2000) return {false, fmt("test set too large: %zu", cs.size())};
        points += cs.size();
        const auto pts = oracle::centers(cs);
        for (const auto& e : regions) {
            const double n = static_cast<double>(oracle::in_region(pts, e));
            const auto p = pair_correlation(cs, e, xi), q = nn_spacing(cs, e, xi);
            for (std::size_t k = 0; k < xi.size(); ++k) {
                const double bp = static_cast<double>(oracle::pair_count(pts, e, cs.scale(), xi[k]));
                const double bq = static_cast<double>(oracle::nn_count(pts, e, cs.scale(), xi[k]));
                mismatches += std::abs(p.values[k] - bp / n) > kRatioTol;
                mismatches += std::abs(q.values[k] - bq / n) > kRatioTol;
                comparisons += 2;
            }
        }
        const GridIndex index(pts, 0.01);
        for (double r : {0.005, 0.02, 0.1}) {
            mismatches += index.pairs_within(r) != oracle::pair_count(pts, Region::plane(), 1.0, r);
            ++comparisons;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            mismatches += index.nearest_neighbor(i).dist != oracle::nearest_distance(pts, i);
            ++comparisons;
        }
        for (const auto& w : windows)
            for (std::size_t i = 0; i < pts.size(); i += 3) {
                for (const Complex z : {pts[i], pts[i] + Complex(0.7, -0.4) / cs.scale()}) {
                    mismatches += window_count(cs, w, z) != oracle::window_count(pts, w, cs.scale(), z);
                    ++comparisons;
                }
            }
    }
    return {mismatches == 0, fmt("%zu comparisons on %zu centers in 4 sets, %zu mismatches", comparisons, points,
                                 mismatches)};
}

Outcome sandwich() {
    const double t = 9.0, eps = 0.05;
    const double xis[] = {3.0, 5.0, 8.0};
    const auto cs = enumerate(solve_root_quadruple(kFigureSpec), t);
    std::ostringstream detail;
    bool ok = true;
    double min_margin = 1e300;

    for (const auto& e : {Region::plane(), Region::parse("halfplane:re>0")}) {
        const auto plus = e.dilated(eps), minus = e.eroded(eps);
        const double n = static_cast<double>(count_in_region(cs, e));
        const double a = static_cast<double>(count_in_region(cs, plus)) / n;
        const double b = static_cast<double>(count_in_region(cs, minus)) / n;
        for (double xi : xis) {
            const double p = pair_correlation(cs, e, std::vector<double>{xi}).values[0];
            const auto up = mixed_moment_pair(cs, plus, std::vector<double>{xi + eps}, eps);
            const auto lo = mixed_moment_pair(cs, minus, std::vector<double>{xi - eps}, eps);
            // (0917) and (0918)
            const double upper = a * up.curve.values[0] + a / 2 - 0.5 + kSlackCells * a * up.cell_mass;
            const double lower = b * lo.curve.values[0] + b / 2 - 0.5 - kSlackCells * b * lo.cell_mass;
            ok = ok && p <= upper && p >= lower && up.max_epsilon_count <= 1 && lo.max_epsilon_count <= 1;
            min_margin = std::min({min_margin, upper - p, p - lower});
        }
    }
    // Q(xi - eps) <= Q_eps(xi) <= Q(xi + eps) on the plane
    for (double xi : xis) {
        const auto q = nn_spacing(cs, Region::plane(), std::vector<double>{xi - eps, xi + eps});
        const auto qe = mixed_moment_nn(cs, Region::plane(), std::vector<double>{xi}, eps);
        const double slack = kSlackCells * qe.cell_mass;
        ok = ok && q.values[0] <= qe.curve.values[0] + slack && qe.curve.values[0] <= q.values[1] + slack;
        min_margin = std::min({min_margin, qe.curve.values[0] + slack - q.values[0], q.values[1] + slack - qe.curve.values[0]});
    }
    detail << "t=9 eps=0.05 xi in {3,5,8}, E in {plane, Re z>0}; smallest margin " << min_margin;
    return {ok, detail.str()};
}

Outcome convergence_invariance() {
    const auto xi = make_xi_grid(0.0, 10.0, 0.05);
    const auto fig = enumerate(solve_root_quadruple(kFigureSpec), 11.0);
    const auto p10 = pair_correlation(fig.truncated(10.0), Region::plane(), xi);
    const auto p11 = pair_correlation(fig, Region::plane(), xi);
    const auto other = pair_correlation(enumerate(solve_root_quadruple(kOtherSpec), 10.0), Region::plane(), xi);
    const double d_t = sup_distance(p10, p11, 2.0, 10.0);
    const double d_g = sup_distance(p10, other, 2.0, 10.0);
    return {d_t <= kSupTol && d_g <= kSupTol,
            fmt("sup |P_10 - P_11| = %.5f, sup |P_10 - P_10(other gasket)| = %.5f", d_t, d_g)};
}

Outcome moment_stability() {
    const auto cs = enumerate(solve_root_quadruple(kFigureSpec), 10.0);
    const std::vector<Window> w = {Window::disk(1.0)};
    const auto m9 = joint_indicator_moment(cs.truncated(9.0), w, CountIndex{{1}}, Region::plane());
    const auto m10 = joint_indicator_moment(cs, w, CountIndex{{1}}, Region::plane());
    const double rel = std::abs(m10.scaled_estimate - m9.scaled_estimate) / std::abs(m9.scaled_estimate);
    return {rel <= kMomentRelTol, fmt("scaled estimates %.6f (t=9), %.6f (t=10), relative change %.4f",
                                      m9.scaled_estimate, m10.scaled_estimate, rel)};
}

std::string all_outputs(const CenterSet& cs, unsigned threads) {
    std::ostringstream os;
    const auto xi = make_xi_grid(0.0, 10.0, 0.05);
    const Region half = Region::parse("halfplane:re>0");
    write_curve_csv(os, pair_correlation(cs, half, xi, {threads}));
    write_curve_csv(os, nn_spacing(cs, half, xi, {threads}));
    write_curve_csv(os, empirical_derivative(pair_correlation(cs, Region::plane(), xi, {threads}), 0.1));
    QuadratureOptions q;
    q.threads = threads;
    write_curve_csv(os, mixed_moment_pair(cs, half, make_xi_grid(1.0, 6.0, 0.5), 0.05, q).curve);
    write_curve_csv(os, mixed_moment_nn(cs, half, make_xi_grid(1.0, 6.0, 0.5), 0.05, q).curve);
    MomentOptions m;
    m.threads = threads;
    const std::vector<Window> w = {Window::disk(1.0), Window::disk(2.5)};
    const MomentEstimate rows[] = {joint_indicator_moment(cs, w, CountIndex{{1, 1}}, Region::plane(), m),
                                   joint_power_moment(cs, w, PowerIndex{{1.0, 0.5}}, half, m)};
    write_moment_csv(os, rows);
    return os.str();
}

Outcome determinism() {
    const auto cs = enumerate(solve_root_quadruple(kFigureSpec), 9.0);
    const auto one = all_outputs(cs, 1);
    const auto four = all_outputs(cs, 4);
    const auto eight = all_outputs(cs, 8);
    return {one == four && one == eight, fmt("%zu bytes of CSV output compared across 1, 4, 8 threads", one.size())};
}

} // namespace

int main() {
    report("growth-exponent", growth_exponent);
    report("hard-support-gap", support_gap);
    report("hyperbolic-separation", hyperbolic_separation);
    report("descartes-residuals", descartes_residuals);
    report("oracle-equivalence", oracle_equivalence);
    report("sandwich-inequalities", sandwich);
    report("convergence-invariance", convergence_invariance);
    report("moment-stability", moment_stability);
    report("determinism", determinism);
    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
