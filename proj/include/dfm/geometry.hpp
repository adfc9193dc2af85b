#ifndef DFM_GEOMETRY_HPP
#define DFM_GEOMETRY_HPP

#include <cmath>

namespace dfm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::sqrt(dot(v, v)); }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Unit normal "to the right of" the tangent: for t=(1,0) this is (0,-1).
inline Vec2 right_normal(const Vec2& t) { return {t.y, -t.x}; }

// Symmetric 2x2 tensor, used for the matrix permeability.
struct Tensor2 {
    double xx = 1.0;
    double xy = 0.0;
    double yy = 1.0;

    static Tensor2 isotropic(double k) { return {k, 0.0, k}; }
    Vec2 apply(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    // n . (K n) for a unit vector n.
    double normal_component(const Vec2& n) const { return dot(n, apply(n)); }
    bool spd() const { return xx > 0.0 && yy > 0.0 && xx * yy - xy * xy > 0.0; }
};

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(const Vec2& p, double tol = 0.0) const {
        return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
    }
};

// Clip segment [a,b] against an axis-aligned rectangle (Liang-Barsky).
// Returns false if the intersection is empty or degenerate; otherwise
// [t0,t1] are the entering/leaving parameters along a + t*(b-a).
inline bool clip_segment_rect(const Vec2& a, const Vec2& b, const Rect& r,
                              double& t0, double& t1) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    t0 = 0.0;
    t1 = 1.0;
    auto clip1 = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        const double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            if (t > t0) t0 = t;
        } else {
            if (t < t0) return false;
            if (t < t1) t1 = t;
        }
        return true;
    };
    if (!clip1(-dx, a.x - r.x0)) return false;
    if (!clip1(dx, r.x1 - a.x)) return false;
    if (!clip1(-dy, a.y - r.y0)) return false;
    if (!clip1(dy, r.y1 - a.y)) return false;
    return t1 > t0;
}

// Distance from point p to segment [a,b].
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, d) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return norm(p - (a + t * d));
}

// Proper or touching intersection of segments [a,b] and [c,d].
// Returns true and the parameters (s along ab, t along cd) when the segments
// meet in a single point; parallel/collinear overlaps return false.
inline bool segment_intersection(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                                 double& s, double& t) {
    const Vec2 r = b - a;
    const Vec2 q = d - c;
    const double denom = cross(r, q);
    if (denom == 0.0) return false;
    const Vec2 ac = c - a;
    s = cross(ac, q) / denom;
    t = cross(ac, r) / denom;
    return true;
}

}  // namespace dfm

#endif
