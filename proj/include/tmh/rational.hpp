#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace tmh {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline int sign(const Rat& r) { return r.sign(); }
inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }
bool is_integer(const Rat& r);

// closest rational with denominator at most max_den (continued fractions)
Rat rationalize(double v, std::int64_t max_den = 1000000000LL);

struct Vec2i {
    long x = 0, y = 0;
    friend bool operator==(const Vec2i&, const Vec2i&) = default;
    friend auto operator<=>(const Vec2i&, const Vec2i&) = default;
    Vec2i operator+(const Vec2i& o) const { return {x + o.x, y + o.y}; }
    Vec2i operator-(const Vec2i& o) const { return {x - o.x, y - o.y}; }
    Vec2i operator-() const { return {-x, -y}; }
    Vec2i operator*(long k) const { return {k * x, k * y}; }
};
inline long dot(const Vec2i& a, const Vec2i& b) { return a.x * b.x + a.y * b.y; }
inline long cross(const Vec2i& a, const Vec2i& b) { return a.x * b.y - a.y * b.x; }
Vec2i primitive(Vec2i v);

struct Vec2q {
    Rat x, y;
    friend bool operator==(const Vec2q&, const Vec2q&) = default;
    Vec2q operator+(const Vec2q& o) const { return {x + o.x, y + o.y}; }
    Vec2q operator-(const Vec2q& o) const { return {x - o.x, y - o.y}; }
    Vec2q operator*(const Rat& k) const { return {x * k, y * k}; }
};
inline Rat dot(const Vec2q& a, const Vec2i& n) { return a.x * n.x + a.y * n.y; }
inline Vec2q to_q(const Vec2i& v) { return {Rat(v.x), Rat(v.y)}; }

struct Vec2d {
    double x = 0, y = 0;
    Vec2d operator+(const Vec2d& o) const { return {x + o.x, y + o.y}; }
    Vec2d operator-(const Vec2d& o) const { return {x - o.x, y - o.y}; }
    Vec2d operator*(double k) const { return {x * k, y * k}; }
    double norm() const { return std::hypot(x, y); }
};
inline double dot(const Vec2d& a, const Vec2d& b) { return a.x * b.x + a.y * b.y; }
inline Vec2d to_d(const Vec2q& v) { return {to_double(v.x), to_double(v.y)}; }
inline Vec2d to_d(const Vec2i& v) { return {double(v.x), double(v.y)}; }

std::string to_string(const Vec2q& v);
std::string to_string(const Vec2i& v);

struct Mat2q {
    Rat a[2][2];
    Rat trace() const { return a[0][0] + a[1][1]; }
    Rat det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

struct Mat2d {
    double a[2][2] = {{0, 0}, {0, 0}};
};

}  // namespace tmh
