#include "gasket/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gasket/csv.hpp"

namespace gasket {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double box_distance(double qx, double qy) {
    return std::hypot(std::max(qx, 0.0), std::max(qy, 0.0)) + std::min(std::max(qx, qy), 0.0);
}

std::vector<double> parse_args(std::string_view text, std::size_t expected, std::string_view what) {
    auto v = parse_real_list(text);
    if (v.size() != expected)
        throw InvalidArgument(std::string(what) + " expects " + std::to_string(expected) + " numbers");
    return v;
}

} // namespace

Region Region::plane() { return {}; }

Region Region::half_plane(Complex normal, double offset) {
    const double n = std::abs(normal);
    if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(offset)) throw InvalidArgument("half-plane needs a nonzero normal");
    Region r;
    r.kind_ = Kind::HalfPlane;
    r.normal_ = normal / n;
    r.offset_ = offset / n;
    return r;
}

Region Region::disk(Complex center, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("disk region needs a positive radius");
    Region r;
    r.kind_ = Kind::Disk;
    r.a_ = center;
    r.radius_ = radius;
    return r;
}

Region Region::rect(Complex lo, Complex hi) {
    if (!(lo.real() < hi.real()) || !(lo.imag() < hi.imag())) throw InvalidArgument("rect region needs lo < hi");
    Region r;
    r.kind_ = Kind::Rect;
    r.a_ = lo;
    r.b_ = hi;
    return r;
}

Region Region::quadrant(Complex corner) {
    Region r;
    r.kind_ = Kind::Quadrant;
    r.a_ = corner;
    return r;
}

Region Region::parse(std::string_view text) {
    if (text == "plane") return plane();
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "quadrant") {
        if (args.empty()) return quadrant(0.0);
        auto v = parse_args(args, 2, "quadrant");
        return quadrant({v[0], v[1]});
    }
    if (head == "disk") {
        auto v = parse_args(args, 3, "disk");
        return disk({v[0], v[1]}, v[2]);
    }
    if (head == "rect") {
        auto v = parse_args(args, 4, "rect");
        return rect({v[0], v[1]}, {v[2], v[3]});
    }
    if (head == "halfplane" && args.size() > 3) {
        const std::string_view axis = args.substr(0, 2);
        const char op = args[2];
        const double value = parse_real(args.substr(3));
        if ((axis == "re" || axis == "im") && (op == '>' || op == '<')) {
            const Complex n = axis == "re" ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            return op == '>' ? half_plane(n, value) : half_plane(-n, -value);
        }
    }
    throw InvalidArgument("unrecognized region '" + std::string(text) + "'");
}

std::string Region::describe() const {
    std::string s;
    switch (kind_) {
    case Kind::WholePlane: return "plane";
    case Kind::HalfPlane:
        s = "halfplane(n=" + format_real(normal_.real()) + "," + format_real(normal_.imag()) +
            ";offset=" + format_real(offset_) + ")";
        break;
    case Kind::Disk:
        s = "disk(" + format_real(a_.real()) + "," + format_real(a_.imag()) + ";r=" + format_real(radius_) + ")";
        break;
    case Kind::Rect:
        s = "rect(" + format_real(a_.real()) + "," + format_real(a_.imag()) + ";" + format_real(b_.real()) + "," +
            format_real(b_.imag()) + ")";
        break;
    case Kind::Quadrant: s = "quadrant(" + format_real(a_.real()) + "," + format_real(a_.imag()) + ")"; break;
    }
    if (level_ != 0.0) s += "@" + format_real(level_);
    return s;
}

double Region::signed_distance(Complex z) const {
    switch (kind_) {
    case Kind::WholePlane: return -kInf;
    case Kind::HalfPlane: return offset_ - (normal_.real() * z.real() + normal_.imag() * z.imag());
    case Kind::Disk: return std::abs(z - a_) - radius_;
    case Kind::Rect: {
        const Complex c = 0.5 * (a_ + b_);
        const Complex h = 0.5 * (b_ - a_);
        return box_distance(std::abs(z.real() - c.real()) - h.real(), std::abs(z.imag() - c.imag()) - h.imag());
    }
    case Kind::Quadrant: return box_distance(a_.real() - z.real(), a_.imag() - z.imag());
    }
    return kInf;
}

bool Region::contains(Complex z) const {
    if (kind_ == Kind::WholePlane) return true;
    return signed_distance(z) < level_;
}

Region Region::dilated(double eps) const {
    if (!(eps >= 0.0)) throw InvalidArgument("dilation must be nonnegative");
    Region r = *this;
    r.level_ += eps;
    return r;
}

Region Region::eroded(double eps) const {
    if (!(eps >= 0.0)) throw InvalidArgument("erosion must be nonnegative");
    Region r = *this;
    r.level_ -= eps;
    return r;
}

std::optional<std::pair<double, double>> Region::row_span(double y) const {
    const double s = level_;
    switch (kind_) {
    case Kind::WholePlane: return std::make_pair(-kInf, kInf);
    case Kind::HalfPlane: {
        const double nx = normal_.real(), ny = normal_.imag();
        const double rhs = offset_ - s - ny * y;
        if (nx == 0.0) {
            if (0.0 > rhs) return std::make_pair(-kInf, kInf);
            return std::nullopt;
        }
        if (nx > 0.0) return std::make_pair(rhs / nx, kInf);
        return std::make_pair(-kInf, rhs / nx);
    }
    case Kind::Disk: {
        const double big = radius_ + s;
        const double dy = std::abs(y - a_.imag());
        if (!(dy < big)) return std::nullopt;
        const double w = std::sqrt(big * big - dy * dy);
        return std::make_pair(a_.real() - w, a_.real() + w);
    }
    case Kind::Rect: {
        const double cx = 0.5 * (a_.real() + b_.real()), cy = 0.5 * (a_.imag() + b_.imag());
        const double hx = 0.5 * (b_.real() - a_.real()), hy = 0.5 * (b_.imag() - a_.imag());
        const double qy = std::abs(y - cy) - hy;
        double reach;
        if (s <= 0.0) {
            if (!(qy < s) || !(hx + s > 0.0)) return std::nullopt;
            reach = hx + s;
        } else if (qy <= 0.0) {
            reach = hx + s;
        } else {
            if (!(qy < s)) return std::nullopt;
            reach = hx + std::sqrt(s * s - qy * qy);
        }
        return std::make_pair(cx - reach, cx + reach);
    }
    case Kind::Quadrant: {
        const double qy = a_.imag() - y;
        if (s <= 0.0) {
            if (!(qy < s)) return std::nullopt;
            return std::make_pair(a_.real() - s, kInf);
        }
        if (qy <= 0.0) return std::make_pair(a_.real() - s, kInf);
        if (!(qy < s)) return std::nullopt;
        return std::make_pair(a_.real() - std::sqrt(s * s - qy * qy), kInf);
    }
    }
    return std::nullopt;
}

std::optional<std::pair<Complex, Complex>> Region::bounding_box() const {
    const Complex pad(std::max(level_, 0.0), std::max(level_, 0.0));
    if (kind_ == Kind::Disk) {
        const double r = radius_ + level_;
        return std::make_pair(a_ - Complex(r, r), a_ + Complex(r, r));
    }
    if (kind_ == Kind::Rect) return std::make_pair(a_ - pad, b_ + pad);
    return std::nullopt;
}

// --- windows -----------------------------------------------------------------

Window Window::disk(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("window radius must be positive");
    Window w;
    w.kind_ = Kind::Disk;
    w.radius_ = radius;
    return w;
}

Window Window::rect(Complex lo, Complex hi) {
    if (!(lo.real() < hi.real()) || !(lo.imag() < hi.imag())) throw InvalidArgument("window rect needs lo < hi");
    Window w;
    w.kind_ = Kind::Rect;
    w.lo_ = lo;
    w.hi_ = hi;
    return w;
}

Window Window::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw InvalidArgument("window needs the form disk:R or rect:X0,Y0,X1,Y1");
    const std::string_view head = text.substr(0, colon), args = text.substr(colon + 1);
    if (head == "disk") return disk(parse_real(args));
    if (head == "rect") {
        auto v = parse_args(args, 4, "rect window");
        return rect({v[0], v[1]}, {v[2], v[3]});
    }
    throw InvalidArgument("unrecognized window '" + std::string(text) + "'");
}

std::string Window::describe() const {
    if (kind_ == Kind::Disk) return "disk:" + format_real(radius_);
    return "rect:" + format_real(lo_.real()) + "," + format_real(lo_.imag()) + "," + format_real(hi_.real()) + "," +
           format_real(hi_.imag());
}

bool Window::contains(Complex w) const {
    if (kind_ == Kind::Disk) return std::abs(w) < radius_;
    return w.real() > lo_.real() && w.real() < hi_.real() && w.imag() > lo_.imag() && w.imag() < hi_.imag();
}

double Window::diameter() const {
    if (kind_ == Kind::Disk) return 2.0 * radius_;
    return std::abs(hi_ - lo_);
}

double Window::reach() const {
    if (kind_ == Kind::Disk) return radius_;
    return std::max({std::abs(lo_), std::abs(hi_), std::abs(Complex(lo_.real(), hi_.imag())),
                     std::abs(Complex(hi_.real(), lo_.imag()))});
}

} // namespace gasket
