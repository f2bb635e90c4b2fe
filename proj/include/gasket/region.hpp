#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "gasket/geometry.hpp"

namespace gasket {

/// Open region E of the plane, given as a sublevel set {sd(z) < level} of the
/// signed distance sd to a base shape (negative inside). Level 0 is the shape
/// itself; level +eps is E_{eps+} = {d(z, E) < eps} and level -eps is
/// E_{eps-} = {z in E : d(z, boundary) > eps}.
class Region {
public:
    enum class Kind { WholePlane, HalfPlane, Disk, Rect, Quadrant };

    static Region plane();
    /// {z : <normal, z> > offset}; normal need not be unit length.
    static Region half_plane(Complex normal, double offset);
    static Region disk(Complex center, double radius);
    static Region rect(Complex lo, Complex hi);
    /// {z : Re z > Re corner, Im z > Im corner}.
    static Region quadrant(Complex corner);

    /// Accepts: plane | halfplane:re>A | halfplane:re<A | halfplane:im>A |
    /// halfplane:im<A | disk:X,Y,R | rect:X0,Y0,X1,Y1 | quadrant[:X,Y].
    static Region parse(std::string_view text);
    std::string describe() const;

    Kind kind() const { return kind_; }
    double level() const { return level_; }

    double signed_distance(Complex z) const;
    bool contains(Complex z) const;

    Region dilated(double eps) const;
    Region eroded(double eps) const;

    /// Open x-interval {x : (x, y) in E} for a row, nullopt when empty.
    /// Bounds may be infinite.
    std::optional<std::pair<double, double>> row_span(double y) const;
    /// Corners (lo, hi) of an axis box containing E; nullopt when E is unbounded.
    std::optional<std::pair<Complex, Complex>> bounding_box() const;

private:
    Kind kind_ = Kind::WholePlane;
    Complex normal_{1.0, 0.0};  // unit, for half-planes
    double offset_ = 0.0;
    Complex a_{};               // disk center / rect lo / quadrant corner
    Complex b_{};               // rect hi
    double radius_ = 0.0;
    double level_ = 0.0;
};

/// Bounded open window Omega in rescaled coordinates, anchored at the origin.
class Window {
public:
    enum class Kind { Disk, Rect };

    static Window disk(double radius);
    static Window rect(Complex lo, Complex hi);
    /// disk:R | rect:X0,Y0,X1,Y1
    static Window parse(std::string_view text);
    std::string describe() const;

    Kind kind() const { return kind_; }
    bool contains(Complex w) const;
    double diameter() const;
    /// sup |w| over the window.
    double reach() const;

private:
    Kind kind_ = Kind::Disk;
    double radius_ = 1.0;
    Complex lo_{}, hi_{};
};

} // namespace gasket
