#include "gasket/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace gasket {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    return w < 0.0 ? w + 2.0 * kPi : w;
}

} // namespace

Circle::Circle(Complex c, double k) : center(c), curvature(k) {
    if (!finite(c) || !std::isfinite(k) || k == 0.0)
        throw InvalidArgument("circle needs a finite center and nonzero finite curvature");
}

Circle Circle::from_radius(Complex c, double radius, bool enclosing) {
    if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
    return {c, enclosing ? -1.0 / radius : 1.0 / radius};
}

double tangency_gap(const Circle& a, const Circle& b) {
    const double dist = std::abs(a.center - b.center);
    if (a.enclosing() != b.enclosing()) return dist - std::abs(a.radius() - b.radius());
    return dist - (a.radius() + b.radius());
}

bool tangent(const Circle& a, const Circle& b, double tol) {
    return std::abs(tangency_gap(a, b)) <= tol;
}

double DescartesQuadruple::curvature_sum() const {
    double s = 0.0;
    for (const auto& c : circles) s += c.curvature;
    return s;
}

double DescartesQuadruple::descartes_residual() const {
    double sum = 0.0, sq = 0.0;
    for (const auto& c : circles) {
        sum += c.curvature;
        sq += c.curvature * c.curvature;
    }
    return std::abs(sum * sum - 2.0 * sq);
}

double DescartesQuadruple::complex_descartes_residual() const {
    Complex sum = 0.0, sq = 0.0;
    for (const auto& c : circles) {
        const Complex w = c.curvature_center();
        sum += w;
        sq += w * w;
    }
    return std::abs(sum * sum - 2.0 * sq);
}

double DescartesQuadruple::tangency_residual() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            worst = std::max(worst, std::abs(tangency_gap(circles[i], circles[j])));
    return worst;
}

bool DescartesQuadruple::satisfies_descartes(double tol) const {
    double sq = 0.0, csq = 0.0;
    for (const auto& c : circles) {
        sq += c.curvature * c.curvature;
        csq += std::norm(c.curvature_center());
    }
    return descartes_residual() <= tol * std::max(1.0, sq) &&
           complex_descartes_residual() <= tol * std::max(1.0, csq);
}

DescartesQuadruple reflect(const DescartesQuadruple& q, int i) {
    if (i < 0 || i > 3) throw InvalidArgument("reflection index must be in 0..3");
    double others = 0.0;
    Complex others_z = 0.0;
    for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        others += q.circles[j].curvature;
        others_z += q.circles[j].curvature_center();
    }
    const Circle& old = q.circles[i];
    const double k = 2.0 * others - old.curvature;
    const Complex kz = 2.0 * others_z - old.curvature_center();

    DescartesQuadruple out = q;
    out.circles[i] = Circle(kz / k, k);
    out.last_swapped = i;
    return out;
}

DescartesQuadruple quadruple_from_curvatures(double b0, double b1, double b2, double b3) {
    if (!(b0 < 0.0) || !(b1 > 0.0) || !(b2 > 0.0) || !(b3 > 0.0))
        throw InvalidSpec("bounded quadruple needs exactly one negative curvature, listed first");
    const double sum = b0 + b1 + b2 + b3;
    const double sq = b0 * b0 + b1 * b1 + b2 * b2 + b3 * b3;
    if (std::abs(sum * sum - 2.0 * sq) > 1e-9 * std::max(1.0, sq))
        throw InvalidSpec("curvatures do not satisfy the Descartes relation");

    const double big = -1.0 / b0;
    const double r1 = 1.0 / b1, r2 = 1.0 / b2;
    const double d1 = big - r1, d2 = big - r2;
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw InvalidSpec("inner circle as large as the bounding circle");

    const Circle c0(0.0, b0);
    const Circle c1(-d1, b1);
    const double cos_phi = std::clamp((d1 * d1 + d2 * d2 - (r1 + r2) * (r1 + r2)) / (2.0 * d1 * d2), -1.0, 1.0);
    const double phi = std::acos(cos_phi);
    const Circle c2(std::polar(d2, kPi - phi), b2);

    const Complex lin = c0.curvature_center() + c1.curvature_center() + c2.curvature_center();
    const Complex root = std::sqrt(c0.curvature_center() * c1.curvature_center() +
                                   c1.curvature_center() * c2.curvature_center() +
                                   c2.curvature_center() * c0.curvature_center());

    DescartesQuadruple best;
    double best_res = 0.0;
    bool have = false;
    for (double sign : {1.0, -1.0}) {
        DescartesQuadruple q{{c0, c1, c2, Circle((lin + sign * 2.0 * root) / b3, b3)}, std::nullopt};
        const double res = q.tangency_residual();
        const bool better = !have || res < best_res - 1e-9 ||
                            (std::abs(res - best_res) <= 1e-9 && q.circles[3].center.imag() > best.circles[3].center.imag());
        if (better) {
            best = q;
            best_res = res;
            have = true;
        }
    }
    if (best_res > 1e-9 * std::max(1.0, big)) throw InvalidSpec("could not place a tangent fourth circle");
    return best;
}

// --- Mobius maps -------------------------------------------------------------

MobiusMap::MobiusMap() : m_(Eigen::Matrix2cd::Identity()) {}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) {
    Eigen::Matrix2cd m;
    m << a, b, c, d;
    *this = MobiusMap(m);
}

MobiusMap::MobiusMap(const Eigen::Matrix2cd& m) : m_(m) {
    const Complex det = m.determinant();
    if (std::abs(det) < 1e-12) throw DegenerateMap("Mobius map has (near) zero determinant");
    m_ /= std::sqrt(det);
}

MobiusMap MobiusMap::dilation(Complex lambda) {
    if (lambda == 0.0) throw DegenerateMap("dilation by zero");
    return {lambda, 0.0, 0.0, 1.0};
}

std::optional<Complex> MobiusMap::operator()(Complex z) const {
    const Complex den = c() * z + d();
    if (std::abs(den) <= 1e-15 * (std::abs(c() * z) + std::abs(d()))) return std::nullopt;
    const Complex w = (a() * z + b()) / den;
    if (!finite(w)) return std::nullopt;
    return w;
}

std::optional<Complex> MobiusMap::pole() const {
    if (c() == 0.0) return std::nullopt;
    return -d() / c();
}

MobiusMap MobiusMap::inverse() const { return {d(), -b(), -c(), a()}; }

MobiusMap operator*(const MobiusMap& lhs, const MobiusMap& rhs) {
    return MobiusMap(Eigen::Matrix2cd(lhs.matrix() * rhs.matrix()));
}

std::optional<Circle> circle_through(Complex z1, Complex z2, Complex z3) {
    const double x1 = z1.real(), y1 = z1.imag();
    const double x2 = z2.real(), y2 = z2.imag();
    const double x3 = z3.real(), y3 = z3.imag();
    const double det = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
    const double scale = std::max({std::norm(z2 - z1), std::norm(z3 - z1), std::norm(z3 - z2)});
    if (!(std::abs(det) > 1e-13 * scale)) return std::nullopt;
    const double s1 = std::norm(z1), s2 = std::norm(z2), s3 = std::norm(z3);
    const double ux = (s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / det;
    const double uy = (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / det;
    const Complex center(ux, uy);
    const double r = (std::abs(z1 - center) + std::abs(z2 - center) + std::abs(z3 - center)) / 3.0;
    if (!finite(center) || !(r > 0.0) || !std::isfinite(r)) return std::nullopt;
    return Circle::from_radius(center, r);
}

Circle apply_mobius(const MobiusMap& m, const Circle& c) {
    const double r = c.radius();
    bool flips = false;
    if (auto p = m.pole()) {
        const double off = std::abs(*p - c.center) - r;
        if (std::abs(off) <= 1e-12 * std::max(1.0, r)) throw LineImage("circle passes through the pole");
        flips = off < 0.0;
    }
    std::array<Complex, 3> img;
    for (int k = 0; k < 3; ++k) {
        auto w = m(c.center + std::polar(r, 2.0 * kPi * k / 3.0));
        if (!w) throw LineImage("sample point sent to infinity");
        img[k] = *w;
    }
    auto fit = circle_through(img[0], img[1], img[2]);
    if (!fit) throw LineImage("image points are collinear");
    const bool enclosing = c.enclosing() != flips;
    return Circle::from_radius(fit->center, fit->radius(), enclosing);
}

// --- root quadruple of P(theta1, theta2) -------------------------------------

void GasketSpec::validate() const {
    if (!std::isfinite(theta1) || !std::isfinite(theta2))
        throw InvalidSpec("angles must be finite");
    if (!(theta1 > 0.0 && theta1 < 2.0 * kPi) || !(theta2 > 0.0 && theta2 < 2.0 * kPi))
        throw InvalidSpec("angles must lie in (0, 2pi)");
    const double a = wrap_angle(theta1), b = wrap_angle(theta2);
    if (std::abs(std::polar(1.0, a) - std::polar(1.0, b)) < 1e-12)
        throw InvalidSpec("tangency points coincide");
    if (std::abs(std::polar(1.0, a) - 1.0) < 1e-12 || std::abs(std::polar(1.0, b) - 1.0) < 1e-12)
        throw InvalidSpec("tangency point coincides with 1");
}

Eigen::Vector3d tangency_system(const Eigen::Vector3d& r, const std::array<double, 3>& angles) {
    Eigen::Vector3d f;
    constexpr int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (int k = 0; k < 3; ++k) {
        const int i = pairs[k][0], j = pairs[k][1];
        const double ui = 1.0 - r[i], uj = 1.0 - r[j];
        f[k] = ui * ui + uj * uj - 2.0 * ui * uj * std::cos(angles[i] - angles[j]) - (r[i] + r[j]) * (r[i] + r[j]);
    }
    return f;
}

namespace {

Eigen::Matrix3d tangency_jacobian(const Eigen::Vector3d& r, const std::array<double, 3>& angles) {
    Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
    constexpr int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (int k = 0; k < 3; ++k) {
        const int i = pairs[k][0], j = pairs[k][1];
        const double cs = std::cos(angles[i] - angles[j]);
        const double ui = 1.0 - r[i], uj = 1.0 - r[j];
        jac(k, i) = -2.0 * ui + 2.0 * uj * cs - 2.0 * (r[i] + r[j]);
        jac(k, j) = -2.0 * uj + 2.0 * ui * cs - 2.0 * (r[i] + r[j]);
    }
    return jac;
}

bool radii_admissible(const Eigen::Vector3d& r) { return (r.array() > 0.0).all() && (r.array() < 1.0).all(); }

} // namespace

DescartesQuadruple solve_root_quadruple(const GasketSpec& spec, const RootSolveOptions& opts) {
    spec.validate();
    const std::array<double, 3> angles{0.0, spec.theta1, spec.theta2};

    Eigen::Vector3d r = Eigen::Vector3d::Constant(opts.initial_radius);
    Eigen::Vector3d f = tangency_system(r, angles);
    int iter = 0;
    while (f.lpNorm<Eigen::Infinity>() > opts.tolerance) {
        if (++iter > opts.max_iterations)
            throw NoConvergence("root quadruple solver did not converge in " + std::to_string(opts.max_iterations) +
                                " iterations");
        const Eigen::Matrix3d jac = tangency_jacobian(r, angles);
        const Eigen::Vector3d step = jac.fullPivLu().solve(-f);
        if (!step.allFinite()) throw NoConvergence("singular tangency Jacobian");

        // Damped step: stay inside (0,1)^3 and do not increase the residual.
        double lambda = 1.0;
        Eigen::Vector3d next = r + step;
        Eigen::Vector3d fn = tangency_system(next, angles);
        while ((!radii_admissible(next) || fn.norm() > f.norm()) && lambda > 1e-6) {
            lambda *= 0.5;
            next = r + lambda * step;
            fn = tangency_system(next, angles);
        }
        if (!radii_admissible(next)) throw NoConvergence("Newton iterate left the admissible radius range");
        r = next;
        f = fn;
    }

    DescartesQuadruple q;
    q.circles[0] = Circle(0.0, -1.0);
    for (int j = 0; j < 3; ++j) q.circles[j + 1] = Circle(std::polar(1.0 - r[j], angles[j]), 1.0 / r[j]);
    return q;
}

} // namespace gasket
