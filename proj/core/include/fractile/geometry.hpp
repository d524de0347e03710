#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace fractile {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// Signed area of the triangle (a, b, c) times two.
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + t * ab);
}

// Row-major 2x2 matrix.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }
    static Mat2 scale(double s) { return {s, 0.0, 0.0, s}; }
    static Mat2 rotation(double radians) {
        const double cs = std::cos(radians), sn = std::sin(radians);
        return {cs, -sn, sn, cs};
    }

    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const double k = 1.0 / det();
        return {d * k, -b * k, -c * k, a * k};
    }
    friend Vec2 operator*(const Mat2& m, Vec2 v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    // Largest and smallest singular values.
    double max_singular() const;
    double min_singular() const;
};

inline double Mat2::max_singular() const {
    const double p = a * a + b * b + c * c + d * d;
    const double q = std::abs(det());
    return std::sqrt(0.5 * (p + std::sqrt(std::max(0.0, p * p - 4.0 * q * q))));
}

inline double Mat2::min_singular() const {
    const double smax = max_singular();
    return smax == 0.0 ? 0.0 : std::abs(det()) / smax;
}

// x -> linear * x + offset
struct Affine2 {
    Mat2 linear;
    Vec2 offset;

    static Affine2 identity() { return {}; }
    Vec2 operator()(Vec2 p) const { return linear * p + offset; }
    // (*this) o g
    Affine2 then_inner(const Affine2& g) const { return {linear * g.linear, linear * g.offset + offset}; }
    Affine2 inverse() const {
        const Mat2 inv = linear.inverse();
        return {inv, -(inv * offset)};
    }
};

struct Box {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    bool empty() const { return lo.x > hi.x || lo.y > hi.y; }
    void add(Vec2 p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    void add(const Box& o) {
        if (o.empty()) return;
        add(o.lo);
        add(o.hi);
    }
    Box inflated(double r) const { return {{lo.x - r, lo.y - r}, {hi.x + r, hi.y + r}}; }
    bool overlaps(const Box& o) const {
        return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
    }
    bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diagonal() const { return empty() ? 0.0 : std::hypot(width(), height()); }
    // Distance from p to the box (0 inside).
    double distance(Vec2 p) const {
        const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
        const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
        return std::hypot(dx, dy);
    }
};

}  // namespace fractile
