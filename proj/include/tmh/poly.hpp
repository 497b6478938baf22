#pragma once

#include "tmh/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmh {

// Laurent polynomial in two variables (s,t) with rational coefficients.
class Poly2 {
public:
    using Exp = std::pair<int, int>;
    using Terms = std::map<Exp, Rat>;

    Poly2() = default;
    static Poly2 constant(const Rat& c);
    static Poly2 monomial(int a, int b, const Rat& c = Rat(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(int a, int b, const Rat& c);
    Rat coeff(int a, int b) const;

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator-() const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 operator*(const Rat& k) const;
    Poly2& operator+=(const Poly2& o);
    bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

    // s d/ds and t d/dt
    Poly2 euler_s() const;
    Poly2 euler_t() const;

    Rat eval(const Rat& s, const Rat& t) const;
    double eval(double s, double t) const;

    // max over terms of <m,w>; polynomial must be nonzero
    long weight(Vec2i w) const;
    // sum of the terms attaining weight(w)
    Poly2 leading(Vec2i w) const;
    Exp min_exponents() const;
    Exp max_exponents() const;
    Poly2 shifted(int da, int db) const;
    // divide by the largest monomial factor s^a t^b
    Poly2 monomial_free() const;

    // positive rational k with (*this)/k having coprime integer coefficients
    Rat content() const;

    std::string str(const char* sv = "s", const char* tv = "t") const;

private:
    Terms terms_;
};

// Rational function num/den in (s,t).
class RatFunc2 {
public:
    RatFunc2() : num_(), den_(Poly2::constant(1)) {}
    RatFunc2(const Poly2& n);  // NOLINT
    RatFunc2(const Poly2& n, const Poly2& d);
    static RatFunc2 constant(const Rat& c) { return RatFunc2(Poly2::constant(c)); }

    const Poly2& num() const { return num_; }
    const Poly2& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc2 operator+(const RatFunc2& o) const;
    RatFunc2 operator-(const RatFunc2& o) const;
    RatFunc2 operator*(const RatFunc2& o) const;
    RatFunc2 operator/(const RatFunc2& o) const;
    RatFunc2 operator-() const { return RatFunc2(-num_, den_); }
    bool operator==(const RatFunc2& o) const;

    RatFunc2 euler_s() const;
    RatFunc2 euler_t() const;

    Rat eval(const Rat& s, const Rat& t) const;
    double eval(double s, double t) const;

    std::string str(const char* sv = "s", const char* tv = "t") const;

private:
    void normalize();
    Poly2 num_, den_;
};

RatFunc2 log_deriv_s(const RatFunc2& f);
RatFunc2 log_deriv_t(const RatFunc2& f);

// Dense univariate polynomial over Q, coefficient i multiplies x^i.
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<Rat> c);
    static Poly1 constant(const Rat& c) { return Poly1({c}); }
    static Poly1 monomial(int k, const Rat& c = Rat(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lead() const { return c_.back(); }
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }

    Poly1 operator+(const Poly1& o) const;
    Poly1 operator-(const Poly1& o) const;
    Poly1 operator*(const Poly1& o) const;
    Poly1 operator*(const Rat& k) const;
    bool operator==(const Poly1& o) const { return c_ == o.c_; }

    Poly1 derivative() const;
    Rat eval(const Rat& x) const;
    double eval(double x) const;
    // lowest power with nonzero coefficient
    int valuation() const;
    Poly1 shifted_down(int k) const;
    Poly1 monic() const;

    std::string str(const char* v = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b);
Poly1 gcd(const Poly1& a, const Poly1& b);
Poly1 squarefree(const Poly1& p);

struct RealRoot {
    std::optional<Rat> exact;  // set when the root is rational (small denominator)
    double approx = 0;
    Rat lo, hi;                // isolating interval
};

// roots in the open interval (0, inf), sorted, each listed once
std::vector<RealRoot> positive_roots(const Poly1& p);
int count_positive_roots(const Poly1& p);

// Rational function in one variable, with limits at 0+ and +inf.
class RatFunc1 {
public:
    RatFunc1() : num_(), den_(Poly1::constant(1)) {}
    RatFunc1(const Poly1& n, const Poly1& d);

    const Poly1& num() const { return num_; }
    const Poly1& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rat eval(const Rat& x) const;
    double eval(double x) const;
    // nullopt means divergent
    std::optional<Rat> limit_zero() const;
    std::optional<Rat> limit_inf() const;
    RatFunc1 derivative() const;

    std::string str(const char* v = "r") const;

private:
    Poly1 num_, den_;
};

// Res_t(a, b) as a polynomial in s; a, b must have nonnegative exponents
Poly1 resultant_t(const Poly2& a, const Poly2& b);
// a(s0, t) as a polynomial in t
Poly1 specialize_s(const Poly2& a, const Rat& s0);
Poly2 swap_vars(const Poly2& a);

}  // namespace tmh
