#include "gasket/hyperbolic.hpp"

#include <cmath>

namespace gasket {

H3Point::H3Point(Complex z_, double r_) : z(z_), r(r_) {
    if (!(r_ > 0.0) || !std::isfinite(r_) || !std::isfinite(z_.real()) || !std::isfinite(z_.imag()))
        throw InvalidArgument("upper half-space point needs finite z and height r > 0");
}

H3Point act(const MobiusMap& m, const H3Point& p) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const Complex z = p.z;
    const double r2 = p.r * p.r;
    const double den = std::norm(c * z + d) + r2 * std::norm(c);
    const Complex num = a * std::conj(c) * std::norm(z) + a * std::conj(d) * z + b * std::conj(c) * std::conj(z) +
                        b * std::conj(d) + r2 * a * std::conj(c);
    return {num / den, p.r / den};
}

double euclidean_distance_sq(const H3Point& p, const H3Point& q) {
    const double dr = p.r - q.r;
    return std::norm(p.z - q.z) + dr * dr;
}

double cosh_distance(const H3Point& p, const H3Point& q) {
    return 1.0 + euclidean_distance_sq(p, q) / (2.0 * p.r * q.r);
}

double hyp_distance(const H3Point& p, const H3Point& q) {
    return 2.0 * std::asinh(std::sqrt(euclidean_distance_sq(p, q)) / (2.0 * std::sqrt(p.r * q.r)));
}

double busemann_infinity(const H3Point& q) { return std::log(q.r); }

Apex apex_of_circle(const Circle& c) { return {H3Point(c.center, c.radius())}; }

Apex apex_of_image(const MobiusMap& g, const Circle& base) {
    try {
        return apex_of_circle(apply_mobius(g, base));
    } catch (const LineImage&) {
        return {};
    }
}

} // namespace gasket
