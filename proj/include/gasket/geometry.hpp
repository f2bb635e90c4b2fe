#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "gasket/errors.hpp"

namespace gasket {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Oriented circle in the plane. Negative curvature marks an enclosing
/// (bounding) circle whose interior is the outside of the disk.
struct Circle {
    Complex center;
    double curvature = 1.0;

    Circle() = default;
    Circle(Complex c, double k);

    static Circle from_radius(Complex c, double radius, bool enclosing = false);

    double radius() const { return 1.0 / std::abs(curvature); }
    bool enclosing() const { return curvature < 0.0; }
    /// curvature * center, the quantity the complex Descartes relation is linear in.
    Complex curvature_center() const { return curvature * center; }
};

bool tangent(const Circle& a, const Circle& b, double tol = 1e-9);
/// Signed gap between the two circles along the line of centers; zero when tangent.
double tangency_gap(const Circle& a, const Circle& b);

/// Four mutually tangent circles, plus the index last replaced by a reflection.
struct DescartesQuadruple {
    std::array<Circle, 4> circles;
    std::optional<int> last_swapped;

    double curvature_sum() const;
    /// |(sum b)^2 - 2 sum b^2|
    double descartes_residual() const;
    /// |(sum bz)^2 - 2 sum (bz)^2|
    double complex_descartes_residual() const;
    /// Largest violation of pairwise tangency over the six pairs.
    double tangency_residual() const;
    /// Both Descartes identities within tol * max(1, scale).
    bool satisfies_descartes(double tol = 1e-9) const;
};

/// Replace circle i by the other circle tangent to the remaining three.
/// b' = 2(bj + bk + bl) - bi, and the same affine rule on b*z.
DescartesQuadruple reflect(const DescartesQuadruple& q, int i);

/// Bounded quadruple from four signed curvatures with exactly the first one
/// negative. The bounding circle is centered at 0, the second circle is placed
/// on the negative real axis, the third in the closed upper half plane and the
/// fourth in the open upper half plane when there is a choice.
DescartesQuadruple quadruple_from_curvatures(double b0, double b1, double b2, double b3);

/// Element of PSL(2,C), stored normalized to determinant one.
class MobiusMap {
public:
    MobiusMap();
    MobiusMap(Complex a, Complex b, Complex c, Complex d);
    explicit MobiusMap(const Eigen::Matrix2cd& m);

    static MobiusMap identity() { return {}; }
    static MobiusMap translation(Complex w) { return {1.0, w, 0.0, 1.0}; }
    static MobiusMap dilation(Complex lambda);
    static MobiusMap inversion() { return {0.0, 1.0, 1.0, 0.0}; }

    Complex a() const { return m_(0, 0); }
    Complex b() const { return m_(0, 1); }
    Complex c() const { return m_(1, 0); }
    Complex d() const { return m_(1, 1); }
    const Eigen::Matrix2cd& matrix() const { return m_; }

    /// Image of a finite point; nullopt when it is sent to infinity (the
    /// denominator vanishes to rounding).
    std::optional<Complex> operator()(Complex z) const;
    /// Preimage of infinity, or nullopt for affine maps.
    std::optional<Complex> pole() const;
    MobiusMap inverse() const;

private:
    Eigen::Matrix2cd m_;
};

MobiusMap operator*(const MobiusMap& lhs, const MobiusMap& rhs);

/// Circle through three points; nullopt when they are collinear.
std::optional<Circle> circle_through(Complex z1, Complex z2, Complex z3);

/// Image of a circle under m, found by transporting three points of c and
/// refitting. Orientation follows the image of the interior.
/// Throws LineImage when the image passes through infinity.
Circle apply_mobius(const MobiusMap& m, const Circle& c);

/// Bounded gasket determined by the unit circle and three circles internally
/// tangent to it at 1, e^{i theta1}, e^{i theta2}.
struct GasketSpec {
    double theta1 = 0.0;
    double theta2 = 0.0;

    void validate() const;
};

struct RootSolveOptions {
    double initial_radius = 0.3;
    double tolerance = 1e-12;
    int max_iterations = 100;
};

/// Root quadruple (C0, C1, C2, C3) of the gasket. C0 is the unit circle with
/// curvature -1; Cj touches it at e^{i theta_j} (theta_0 = 0).
DescartesQuadruple solve_root_quadruple(const GasketSpec& spec, const RootSolveOptions& opts = {});

/// Residual vector of the three pairwise tangency equations at radii r.
Eigen::Vector3d tangency_system(const Eigen::Vector3d& r, const std::array<double, 3>& angles);

} // namespace gasket
