#include "tmh/tropical.hpp"

#include <stdexcept>

namespace tmh {

TropicalResult tropical_limit(const RatFunc2& f, Vec2i w)
{
    if (w.x == 0 && w.y == 0)
        throw std::invalid_argument("tropical_limit: zero direction");
    TropicalResult r;
    if (f.is_zero())
        return r;
    long hn = f.num().weight(w), hd = f.den().weight(w);
    if (hn > hd) {
        r.divergent = true;
        return r;
    }
    if (hn < hd)
        return r;
    r.value = RatFunc2(f.num().leading(w), f.den().leading(w));
    return r;
}

namespace {

// u with <u,w> = 1 for primitive w
Vec2i bezout(Vec2i w)
{
    long a = w.x, b = w.y;
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a == -1)
        return {-x0, -y0};
    if (a != 1)
        throw std::invalid_argument("direction not primitive");
    return {x0, y0};
}

}  // namespace

EdgeFunction edge_restriction(const RatFunc2& f, Vec2i w)
{
    EdgeFunction out;
    if (f.is_zero())
        return out;
    auto tr = tropical_limit(f, w);
    if (tr.divergent) {
        out.divergent = true;
        return out;
    }
    if (tr.value.is_zero())
        return out;
    Poly2 n = f.num().leading(w), d = f.den().leading(w);
    long h = n.weight(w);
    Vec2i u = bezout(w);
    Vec2i v = face_parameter_exponent(w);
    long vv = dot(v, v);
    auto power = [&](const Poly2::Exp& e) {
        Vec2i m{e.first - h * u.x, e.second - h * u.y};
        long k = dot(m, v);
        if (k % vv != 0)
            throw std::logic_error("edge_restriction: off-line monomial");
        return k / vv;
    };
    long lo = 0;
    bool first = true;
    for (const auto* p : {&n, &d})
        for (const auto& [e, c] : p->terms()) {
            long k = power(e);
            if (first || k < lo)
                lo = k;
            first = false;
        }
    auto collect = [&](const Poly2& p) {
        std::vector<Rat> c;
        for (const auto& [e, k] : p.terms()) {
            long idx = power(e) - lo;
            if (static_cast<long>(c.size()) <= idx)
                c.resize(idx + 1, Rat(0));
            c[idx] += k;
        }
        return Poly1(std::move(c));
    };
    out.value = RatFunc1(collect(n), collect(d));
    return out;
}

VertexValue vertex_limit(const RatFunc2& f, Vec2i wa, Vec2i wb)
{
    const Vec2i probes[3] = {wa + wb, wa * 2 + wb, wa + wb * 2};
    int divergent = 0;
    std::vector<Rat> values;
    for (const auto& w : probes) {
        auto tr = tropical_limit(f, w);
        if (tr.divergent) {
            ++divergent;
            continue;
        }
        const auto& v = tr.value;
        if (v.den() == Poly2::constant(1) && v.num().size() <= 1 &&
            (v.num().is_zero() || v.num().terms().begin()->first == Poly2::Exp{0, 0}))
            values.push_back(v.is_zero() ? Rat(0) : v.num().terms().begin()->second);
        else
            return {VertexStatus::PathDependent, Rat(0)};
    }
    if (divergent == 3)
        return {VertexStatus::Divergent, Rat(0)};
    if (divergent > 0)
        return {VertexStatus::PathDependent, Rat(0)};
    for (const auto& x : values)
        if (x != values.front())
            return {VertexStatus::PathDependent, Rat(0)};
    return {VertexStatus::Finite, values.front()};
}

}  // namespace tmh
