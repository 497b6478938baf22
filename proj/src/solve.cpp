#include "tmh/solve.hpp"

#include "tmh/errors.hpp"

#include <cmath>

namespace tmh {

namespace {

// |p(s,t)| relative to the sum of absolute term values
double rel_residual(const Poly2& p, double s, double t)
{
    double v = 0, scale = 0;
    const double ls = std::log(s), lt = std::log(t);
    double mx = -1e300;
    for (const auto& [e, c] : p.terms())
        mx = std::max(mx, e.first * ls + e.second * lt);
    for (const auto& [e, c] : p.terms()) {
        double term = to_double(c) * std::exp(e.first * ls + e.second * lt - mx);
        v += term;
        scale += std::abs(term);
    }
    return scale == 0 ? 0 : std::abs(v) / scale;
}

double scaled_eval(const Poly2& p, double ls, double lt, double& scale)
{
    double mx = -1e300;
    for (const auto& [e, c] : p.terms())
        mx = std::max(mx, e.first * ls + e.second * lt);
    double v = 0;
    scale = 0;
    for (const auto& [e, c] : p.terms()) {
        double term = to_double(c) * std::exp(e.first * ls + e.second * lt - mx);
        v += term;
        scale += std::abs(term);
    }
    v /= scale;
    return v;
}

// Newton in (log s, log t)
bool polish(const Poly2& a, const Poly2& b, double& s, double& t)
{
    Poly2 as = a.euler_s(), at = a.euler_t(), bs = b.euler_s(), bt = b.euler_t();
    double u = std::log(s), v = std::log(t);
    for (int it = 0; it < 60; ++it) {
        double sa, sb;
        double fa = scaled_eval(a, u, v, sa), fb = scaled_eval(b, u, v, sb);
        if (std::abs(fa) < 1e-15 && std::abs(fb) < 1e-15)
            break;
        // derivatives scaled consistently with fa, fb
        double mxa = -1e300, mxb = -1e300;
        for (const auto& [e, c] : a.terms())
            mxa = std::max(mxa, e.first * u + e.second * v);
        for (const auto& [e, c] : b.terms())
            mxb = std::max(mxb, e.first * u + e.second * v);
        auto ev = [&](const Poly2& p, double mx, double sc) {
            double r = 0;
            for (const auto& [e, c] : p.terms())
                r += to_double(c) * std::exp(e.first * u + e.second * v - mx);
            return r / sc;
        };
        double j00 = ev(as, mxa, sa), j01 = ev(at, mxa, sa), j10 = ev(bs, mxb, sb), j11 = ev(bt, mxb, sb);
        double det = j00 * j11 - j01 * j10;
        if (det == 0 || !std::isfinite(det))
            return false;
        double du = (fa * j11 - fb * j01) / det, dv = (j00 * fb - j10 * fa) / det;
        u -= du;
        v -= dv;
        if (std::abs(du) + std::abs(dv) < 1e-15 * (1 + std::abs(u) + std::abs(v)))
            break;
    }
    s = std::exp(u);
    t = std::exp(v);
    return rel_residual(a, s, t) < 1e-10 && rel_residual(b, s, t) < 1e-10;
}

// true when p changes sign somewhere in the open positive quadrant
bool has_positive_zero(const Poly2& p)
{
    if (p.is_zero())
        return true;
    bool pos = false, neg = false;
    for (int i = -40; i <= 40; ++i)
        for (int j = -40; j <= 40; ++j) {
            double sc;
            double v = scaled_eval(p, i * 0.25, j * 0.25, sc);
            if (v > 0)
                pos = true;
            if (v < 0)
                neg = true;
            if (v == 0)
                return true;
        }
    return pos && neg;
}

}  // namespace

CommonZeros positive_common_zeros(const Poly2& a0, const Poly2& b0)
{
    CommonZeros out;
    if (a0.is_zero() && b0.is_zero()) {
        out.everywhere = true;
        return out;
    }
    auto one_signed = [](const Poly2& p) {
        int sg = 0;
        for (const auto& [e, c] : p.terms()) {
            if (sg == 0)
                sg = c.sign();
            else if (c.sign() != sg)
                return false;
        }
        return true;
    };
    if (a0.is_zero() || b0.is_zero()) {
        const Poly2& p = a0.is_zero() ? b0 : a0;
        if (one_signed(p) || !has_positive_zero(p))
            return out;
        throw Unsupported("zero set contains a curve");
    }
    // a polynomial whose coefficients share one sign has no positive zeros
    if (one_signed(a0) || one_signed(b0))
        return out;
    Poly2 a = a0.monomial_free(), b = b0.monomial_free();
    Poly1 rs = resultant_t(a, b);
    if (rs.is_zero())
        throw Unsupported("zero set contains a curve");
    Poly1 rt = resultant_t(swap_vars(a), swap_vars(b));
    auto sroots = positive_roots(rs);
    auto troots = positive_roots(rt);
    for (const auto& sr : sroots)
        for (const auto& tr : troots) {
            if (sr.exact && tr.exact) {
                if (a.eval(*sr.exact, *tr.exact) == 0 && b.eval(*sr.exact, *tr.exact) == 0) {
                    PlanarRoot r;
                    r.s = sr.exact;
                    r.t = tr.exact;
                    r.s_approx = to_double(*r.s);
                    r.t_approx = to_double(*r.t);
                    out.roots.push_back(r);
                }
                continue;
            }
            double s = sr.approx, t = tr.approx;
            if (rel_residual(a, s, t) > 1e-6 || rel_residual(b, s, t) > 1e-6)
                continue;
            if (!polish(a, b, s, t))
                continue;
            bool dup = false;
            for (const auto& r : out.roots)
                if (std::abs(r.s_approx - s) < 1e-8 * (1 + s) && std::abs(r.t_approx - t) < 1e-8 * (1 + t))
                    dup = true;
            if (!dup) {
                PlanarRoot r;
                r.s_approx = s;
                r.t_approx = t;
                out.roots.push_back(r);
            }
        }
    return out;
}

}  // namespace tmh
