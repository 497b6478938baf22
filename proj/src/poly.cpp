#include "tmh/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tmh {

namespace {

std::string monomial_str(int a, int b, const char* sv, const char* tv)
{
    std::string out;
    auto one = [&](const char* v, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += "*";
        out += v;
        if (e != 1)
            out += "^" + std::to_string(e);
    };
    one(sv, a);
    one(tv, b);
    return out;
}

std::string term_str(const Rat& c, const std::string& mono, bool first)
{
    std::string out;
    Rat a = c;
    if (a.sign() < 0) {
        out += first ? "-" : "-";
        a = -a;
    } else if (!first) {
        out += "+";
    }
    if (mono.empty())
        return out + to_string(a);
    if (a != 1)
        out += to_string(a) + "*";
    return out + mono;
}

}  // namespace

// ---------------------------------------------------------------- Poly2

Poly2 Poly2::constant(const Rat& c)
{
    Poly2 p;
    p.add_term(0, 0, c);
    return p;
}

Poly2 Poly2::monomial(int a, int b, const Rat& c)
{
    Poly2 p;
    p.add_term(a, b, c);
    return p;
}

void Poly2::add_term(int a, int b, const Rat& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(Exp{a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rat Poly2::coeff(int a, int b) const
{
    auto it = terms_.find(Exp{a, b});
    return it == terms_.end() ? Rat(0) : it->second;
}

Poly2 Poly2::operator+(const Poly2& o) const
{
    Poly2 r = *this;
    r += o;
    return r;
}

Poly2& Poly2::operator+=(const Poly2& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e.first, e.second, c);
    return *this;
}

Poly2 Poly2::operator-(const Poly2& o) const
{
    Poly2 r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e.first, e.second, -c);
    return r;
}

Poly2 Poly2::operator-() const
{
    Poly2 r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

Poly2 Poly2::operator*(const Poly2& o) const
{
    Poly2 r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
}

Poly2 Poly2::operator*(const Rat& k) const
{
    Poly2 r;
    if (k == 0)
        return r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, c * k);
    return r;
}

Poly2 Poly2::euler_s() const
{
    Poly2 r;
    for (const auto& [e, c] : terms_)
        r.add_term(e.first, e.second, c * e.first);
    return r;
}

Poly2 Poly2::euler_t() const
{
    Poly2 r;
    for (const auto& [e, c] : terms_)
        r.add_term(e.first, e.second, c * e.second);
    return r;
}

namespace {
Rat rat_pow(const Rat& x, int e)
{
    if (e < 0) {
        if (x == 0)
            throw std::domain_error("negative power of zero");
        return rat_pow(Rat(1) / x, -e);
    }
    Rat r = 1, b = x;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}
}  // namespace

Rat Poly2::eval(const Rat& s, const Rat& t) const
{
    Rat r = 0;
    for (const auto& [e, c] : terms_)
        r += c * rat_pow(s, e.first) * rat_pow(t, e.second);
    return r;
}

double Poly2::eval(double s, double t) const
{
    double r = 0;
    for (const auto& [e, c] : terms_)
        r += to_double(c) * std::pow(s, e.first) * std::pow(t, e.second);
    return r;
}

long Poly2::weight(Vec2i w) const
{
    if (terms_.empty())
        throw std::domain_error("weight of zero polynomial");
    long best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long v = e.first * w.x + e.second * w.y;
        if (first || v > best)
            best = v;
        first = false;
    }
    return best;
}

Poly2 Poly2::leading(Vec2i w) const
{
    Poly2 r;
    if (terms_.empty())
        return r;
    long best = weight(w);
    for (const auto& [e, c] : terms_)
        if (e.first * w.x + e.second * w.y == best)
            r.terms_.emplace(e, c);
    return r;
}

Poly2::Exp Poly2::min_exponents() const
{
    if (terms_.empty())
        return {0, 0};
    int a = terms_.begin()->first.first, b = terms_.begin()->first.second;
    for (const auto& [e, c] : terms_) {
        a = std::min(a, e.first);
        b = std::min(b, e.second);
    }
    return {a, b};
}

Poly2::Exp Poly2::max_exponents() const
{
    if (terms_.empty())
        return {0, 0};
    int a = terms_.begin()->first.first, b = terms_.begin()->first.second;
    for (const auto& [e, c] : terms_) {
        a = std::max(a, e.first);
        b = std::max(b, e.second);
    }
    return {a, b};
}

Poly2 Poly2::shifted(int da, int db) const
{
    Poly2 r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(Exp{e.first + da, e.second + db}, c);
    return r;
}

Poly2 Poly2::monomial_free() const
{
    auto [a, b] = min_exponents();
    return shifted(-a, -b);
}

Rat Poly2::content() const
{
    if (terms_.empty())
        return Rat(1);
    Int g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        g = boost::multiprecision::gcd(g, num(c));
        l = boost::multiprecision::lcm(l, den(c));
    }
    if (g < 0)
        g = -g;
    return Rat(g, l);
}

std::string Poly2::str(const char* sv, const char* tv) const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exp, Rat>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        int dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
        if (dx != dy)
            return dx < dy;
        return x.first.first > y.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : v) {
        out += term_str(c, monomial_str(e.first, e.second, sv, tv), first);
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------- RatFunc2

RatFunc2::RatFunc2(const Poly2& n) : num_(n), den_(Poly2::constant(1)) { normalize(); }

RatFunc2::RatFunc2(const Poly2& n, const Poly2& d) : num_(n), den_(d) { normalize(); }

void RatFunc2::normalize()
{
    if (den_.is_zero())
        throw std::domain_error("division by identically-zero polynomial");
    if (num_.is_zero()) {
        den_ = Poly2::constant(1);
        return;
    }
    auto [a, b] = den_.min_exponents();
    den_ = den_.shifted(-a, -b);
    num_ = num_.shifted(-a, -b);
    Rat k = den_.content();
    if (den_.terms().rbegin()->second.sign() < 0)
        k = -k;
    den_ = den_ * (Rat(1) / k);
    num_ = num_ * (Rat(1) / k);
    // proportional numerator and denominator collapse to a constant
    if (num_.size() == den_.size()) {
        auto it = num_.terms().begin();
        auto jt = den_.terms().begin();
        Rat ratio = it->second / jt->second;
        bool prop = true;
        for (; it != num_.terms().end(); ++it, ++jt)
            if (it->first != jt->first || it->second != ratio * jt->second) {
                prop = false;
                break;
            }
        if (prop) {
            num_ = Poly2::constant(ratio);
            den_ = Poly2::constant(1);
        }
    }
}

RatFunc2 RatFunc2::operator+(const RatFunc2& o) const
{
    if (den_ == o.den_)
        return RatFunc2(num_ + o.num_, den_);
    return RatFunc2(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc2 RatFunc2::operator-(const RatFunc2& o) const
{
    if (den_ == o.den_)
        return RatFunc2(num_ - o.num_, den_);
    return RatFunc2(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc2 RatFunc2::operator*(const RatFunc2& o) const
{
    return RatFunc2(num_ * o.num_, den_ * o.den_);
}

RatFunc2 RatFunc2::operator/(const RatFunc2& o) const
{
    if (o.num_.is_zero())
        throw std::domain_error("division by identically-zero polynomial");
    return RatFunc2(num_ * o.den_, den_ * o.num_);
}

bool RatFunc2::operator==(const RatFunc2& o) const
{
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

RatFunc2 RatFunc2::euler_s() const
{
    return RatFunc2(num_.euler_s() * den_ - num_ * den_.euler_s(), den_ * den_);
}

RatFunc2 RatFunc2::euler_t() const
{
    return RatFunc2(num_.euler_t() * den_ - num_ * den_.euler_t(), den_ * den_);
}

Rat RatFunc2::eval(const Rat& s, const Rat& t) const
{
    Rat d = den_.eval(s, t);
    if (d == 0)
        throw std::domain_error("pole");
    return num_.eval(s, t) / d;
}

double RatFunc2::eval(double s, double t) const { return num_.eval(s, t) / den_.eval(s, t); }

std::string RatFunc2::str(const char* sv, const char* tv) const
{
    std::string n = num_.str(sv, tv);
    if (den_ == Poly2::constant(1))
        return n;
    if (num_.size() > 1)
        n = "(" + n + ")";
    std::string d = den_.str(sv, tv);
    if (den_.size() > 1)
        d = "(" + d + ")";
    return n + "/" + d;
}

RatFunc2 log_deriv_s(const RatFunc2& f)
{
    if (f.is_zero())
        throw std::domain_error("log derivative of zero");
    return RatFunc2(f.num().euler_s(), f.num()) - RatFunc2(f.den().euler_s(), f.den());
}

RatFunc2 log_deriv_t(const RatFunc2& f)
{
    if (f.is_zero())
        throw std::domain_error("log derivative of zero");
    return RatFunc2(f.num().euler_t(), f.num()) - RatFunc2(f.den().euler_t(), f.den());
}

// ---------------------------------------------------------------- Poly1

Poly1::Poly1(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

Poly1 Poly1::monomial(int k, const Rat& c)
{
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return Poly1(std::move(v));
}

void Poly1::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly1 Poly1::operator+(const Poly1& o) const
{
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        v[i] += o.c_[i];
    return Poly1(std::move(v));
}

Poly1 Poly1::operator-(const Poly1& o) const { return *this + o * Rat(-1); }

Poly1 Poly1::operator*(const Poly1& o) const
{
    if (c_.empty() || o.c_.empty())
        return Poly1();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] += c_[i] * o.c_[j];
    return Poly1(std::move(v));
}

Poly1 Poly1::operator*(const Rat& k) const
{
    std::vector<Rat> v = c_;
    for (auto& x : v)
        x *= k;
    return Poly1(std::move(v));
}

Poly1 Poly1::derivative() const
{
    if (c_.size() <= 1)
        return Poly1();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = c_[i] * static_cast<long>(i);
    return Poly1(std::move(v));
}

Rat Poly1::eval(const Rat& x) const
{
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + *it;
    return r;
}

double Poly1::eval(double x) const
{
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + to_double(*it);
    return r;
}

int Poly1::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            return static_cast<int>(i);
    return 0;
}

Poly1 Poly1::shifted_down(int k) const
{
    if (k <= 0)
        return *this;
    if (k >= static_cast<int>(c_.size()))
        return Poly1();
    return Poly1(std::vector<Rat>(c_.begin() + k, c_.end()));
}

Poly1 Poly1::monic() const
{
    if (c_.empty())
        return *this;
    return *this * (Rat(1) / c_.back());
}

std::string Poly1::str(const char* v) const
{
    if (c_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        std::string mono;
        if (i == 1)
            mono = v;
        else if (i > 1)
            mono = std::string(v) + "^" + std::to_string(i);
        out += term_str(c_[i], mono, first);
        first = false;
    }
    return out;
}

std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    std::vector<Rat> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {Poly1(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    for (int i = a.degree(); i >= db; --i) {
        Rat f = r[i] / b.lead();
        q[i - db] = f;
        if (f == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] -= f * b.coeff(j);
    }
    r.resize(db);
    return {Poly1(std::move(q)), Poly1(std::move(r))};
}

Poly1 gcd(const Poly1& a, const Poly1& b)
{
    Poly1 x = a, y = b;
    while (!y.is_zero()) {
        Poly1 r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

Poly1 squarefree(const Poly1& p)
{
    if (p.degree() <= 0)
        return p;
    Poly1 g = gcd(p, p.derivative());
    return divmod(p, g).first;
}

namespace {

std::vector<Poly1> sturm_sequence(const Poly1& p)
{
    std::vector<Poly1> seq{p, p.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        Poly1 r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero())
            break;
        seq.push_back(r * Rat(-1));
    }
    return seq;
}

int variations(const std::vector<Poly1>& seq, const Rat& x)
{
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        int s = q.eval(x).sign();
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++count;
        prev = s;
    }
    return count;
}

int variations_inf(const std::vector<Poly1>& seq)
{
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        if (q.is_zero())
            continue;
        int s = q.lead().sign();
        if (prev != 0 && s != prev)
            ++count;
        prev = s;
    }
    return count;
}

Rat cauchy_bound(const Poly1& p)
{
    Rat m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rat v = abs(p.coeff(i) / p.lead());
        if (v > m)
            m = v;
    }
    return m + 1;
}

}  // namespace

int count_positive_roots(const Poly1& p0)
{
    if (p0.is_zero())
        throw std::domain_error("roots of zero polynomial");
    Poly1 p = squarefree(p0.shifted_down(p0.valuation()));
    if (p.degree() <= 0)
        return 0;
    auto seq = sturm_sequence(p);
    return variations(seq, Rat(0)) - variations_inf(seq);
}

std::vector<RealRoot> positive_roots(const Poly1& p0)
{
    if (p0.is_zero())
        throw std::domain_error("roots of zero polynomial");
    std::vector<RealRoot> out;
    Poly1 p = squarefree(p0.shifted_down(p0.valuation()));
    if (p.degree() <= 0)
        return out;
    auto seq = sturm_sequence(p);
    auto count = [&](const Rat& a, const Rat& b) { return variations(seq, a) - variations(seq, b); };

    // isolate: intervals (lo, hi] holding exactly one root
    std::vector<std::pair<Rat, Rat>> work{{Rat(0), cauchy_bound(p)}}, isolated;
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int n = count(lo, hi);
        if (n == 0)
            continue;
        if (n == 1) {
            isolated.emplace_back(lo, hi);
            continue;
        }
        Rat mid = (lo + hi) / 2;
        work.emplace_back(lo, mid);
        work.emplace_back(mid, hi);
    }
    for (auto [lo, hi] : isolated) {
        RealRoot r;
        if (p.eval(hi) == 0) {
            r.exact = hi;
            r.lo = r.hi = hi;
            r.approx = to_double(hi);
            out.push_back(r);
            continue;
        }
        for (int it = 0; it < 200; ++it) {
            if (to_double(hi - lo) <= 1e-17 * std::max(1.0, to_double(hi)))
                break;
            Rat mid = (lo + hi) / 2;
            if (p.eval(mid) == 0) {
                lo = hi = mid;
                break;
            }
            if (count(lo, mid) == 1)
                hi = mid;
            else
                lo = mid;
        }
        r.lo = lo;
        r.hi = hi;
        r.approx = to_double((lo + hi) / 2);
        if (lo == hi) {
            r.exact = lo;
        } else {
            Rat cand = rationalize(r.approx, 1000000);
            if (cand > lo && cand <= hi && p.eval(cand) == 0)
                r.exact = cand;
        }
        if (r.exact)
            r.approx = to_double(*r.exact);
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.approx < b.approx; });
    return out;
}

// ---------------------------------------------------------------- RatFunc1

RatFunc1::RatFunc1(const Poly1& n, const Poly1& d) : num_(n), den_(d)
{
    if (den_.is_zero())
        throw std::domain_error("division by identically-zero polynomial");
    if (num_.is_zero()) {
        den_ = Poly1::constant(1);
        return;
    }
    int k = std::min(num_.valuation(), den_.valuation());
    num_ = num_.shifted_down(k);
    den_ = den_.shifted_down(k);
    Rat l = den_.lead();
    num_ = num_ * (Rat(1) / l);
    den_ = den_ * (Rat(1) / l);
}

Rat RatFunc1::eval(const Rat& x) const
{
    Rat d = den_.eval(x);
    if (d == 0)
        throw std::domain_error("pole");
    return num_.eval(x) / d;
}

double RatFunc1::eval(double x) const { return num_.eval(x) / den_.eval(x); }

std::optional<Rat> RatFunc1::limit_zero() const
{
    if (num_.is_zero())
        return Rat(0);
    int vn = num_.valuation(), vd = den_.valuation();
    if (vn > vd)
        return Rat(0);
    if (vn < vd)
        return std::nullopt;
    return num_.coeff(vn) / den_.coeff(vd);
}

std::optional<Rat> RatFunc1::limit_inf() const
{
    if (num_.is_zero())
        return Rat(0);
    if (num_.degree() < den_.degree())
        return Rat(0);
    if (num_.degree() > den_.degree())
        return std::nullopt;
    return num_.lead() / den_.lead();
}

RatFunc1 RatFunc1::derivative() const
{
    return RatFunc1(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFunc1::str(const char* v) const
{
    std::string n = num_.str(v);
    if (den_ == Poly1::constant(1))
        return n;
    return "(" + n + ")/(" + den_.str(v) + ")";
}

// ---------------------------------------------------------------- resultant

Poly1 specialize_s(const Poly2& a, const Rat& s0)
{
    auto [mins, mint] = a.min_exponents();
    if (mint < 0)
        throw std::domain_error("specialize_s: negative t exponent");
    auto [maxs, maxt] = a.max_exponents();
    std::vector<Rat> c(maxt + 1, Rat(0));
    for (const auto& [e, k] : a.terms()) {
        Rat v = k;
        for (int i = 0; i < e.first; ++i)
            v *= s0;
        for (int i = 0; i > e.first; --i)
            v /= s0;
        c[e.second] += v;
    }
    return Poly1(std::move(c));
}

Poly2 swap_vars(const Poly2& a)
{
    Poly2 r;
    for (const auto& [e, c] : a.terms())
        r.add_term(e.second, e.first, c);
    return r;
}

namespace {

Rat determinant(std::vector<std::vector<Rat>> m)
{
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

Rat sylvester_det(const Poly1& a, int m, const Poly1& b, int n)
{
    // formal degrees m, n (leading coefficients may vanish)
    const int size = m + n;
    if (size == 0)
        return Rat(1);
    std::vector<std::vector<Rat>> mat(size, std::vector<Rat>(size, Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j)
            mat[r][r + j] = a.coeff(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j)
            mat[n + r][r + j] = b.coeff(n - j);
    return determinant(std::move(mat));
}

Poly1 interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys)
{
    const std::size_t n = xs.size();
    std::vector<Rat> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j)
                break;
        }
    Poly1 result = Poly1::constant(dd[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;)
        result = result * Poly1({-xs[k], Rat(1)}) + Poly1::constant(dd[k]);
    return result;
}

}  // namespace

Poly1 resultant_t(const Poly2& a, const Poly2& b)
{
    auto [amin_s, amin_t] = a.min_exponents();
    auto [bmin_s, bmin_t] = b.min_exponents();
    if (amin_s < 0 || amin_t < 0 || bmin_s < 0 || bmin_t < 0)
        throw std::domain_error("resultant: negative exponents");
    auto [adeg_s, m] = a.max_exponents();
    auto [bdeg_s, n] = b.max_exponents();
    const int bound = n * adeg_s + m * bdeg_s;
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= bound; ++k) {
        Rat s0 = k;
        xs.push_back(s0);
        ys.push_back(sylvester_det(specialize_s(a, s0), m, specialize_s(b, s0), n));
    }
    return interpolate(xs, ys);
}

}  // namespace tmh
