#pragma once

#include <optional>

#include "gasket/geometry.hpp"

namespace gasket {

/// Point z + r j of the upper half-space model of hyperbolic 3-space.
struct H3Point {
    Complex z;
    double r = 1.0;

    H3Point() = default;
    H3Point(Complex z_, double r_);

    Complex re() const { return z; }
    double im() const { return r; }
};

/// Top of the hemisphere over a circle, or the point at infinity when the
/// circle is a line.
struct Apex {
    std::optional<H3Point> point;

    bool at_infinity() const { return !point.has_value(); }
};

/// Isometric action of a PSL(2,C) element on upper half-space.
H3Point act(const MobiusMap& m, const H3Point& p);

/// Squared Euclidean distance in R^3.
double euclidean_distance_sq(const H3Point& p, const H3Point& q);

/// cosh of the hyperbolic distance, 1 + |p-q|^2 / (2 Im p Im q).
double cosh_distance(const H3Point& p, const H3Point& q);

/// Hyperbolic distance. Uses 2 asinh(|p-q| / (2 sqrt(Im p Im q))), which equals
/// arccosh of cosh_distance but keeps full precision for nearby points.
double hyp_distance(const H3Point& p, const H3Point& q);

/// Busemann function at infinity based at j: log Im(q).
double busemann_infinity(const H3Point& q);

/// center + radius j; for an enclosing circle this is the apex of the
/// hemisphere over it as well.
Apex apex_of_circle(const Circle& c);

/// Apex of g(S), S the hemisphere over `base` (the unit circle by default).
/// At infinity when g sends the circle through infinity.
Apex apex_of_image(const MobiusMap& g, const Circle& base = Circle(0.0, -1.0));

} // namespace gasket
