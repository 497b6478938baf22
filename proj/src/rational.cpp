#include "tmh/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace tmh {

Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos)
        throw std::invalid_argument("empty rational");
    s = s.substr(b, e - b + 1);
    auto slash = s.find('/');
    auto check = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size())
            throw std::invalid_argument("bad rational");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("bad rational: " + part);
    };
    if (slash == std::string::npos) {
        check(s);
        if (s[0] == '+')
            s = s.substr(1);
        return Rat(Int(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    check(p);
    check(q);
    if (p[0] == '+')
        p = p.substr(1);
    Int qi(q);
    if (qi == 0)
        throw std::invalid_argument("zero denominator");
    return Rat(Int(p), qi);
}

std::string to_string(const Rat& r)
{
    if (den(r) == 1)
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

bool is_integer(const Rat& r) { return den(r) == 1; }

Rat rationalize(double v, std::int64_t max_den)
{
    if (!std::isfinite(v))
        throw std::invalid_argument("rationalize: non-finite");
    // continued fraction convergents
    long double x = v;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(x);
        Int ai = Int(static_cast<long long>(a));
        Int h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den)
            break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        long double frac = x - a;
        if (frac < 1e-18L)
            break;
        x = 1.0L / frac;
    }
    return Rat(h1, k1);
}

Vec2i primitive(Vec2i v)
{
    long g = std::gcd(std::labs(v.x), std::labs(v.y));
    if (g == 0)
        return v;
    return {v.x / g, v.y / g};
}

std::string to_string(const Vec2q& v) { return "(" + to_string(v.x) + "," + to_string(v.y) + ")"; }
std::string to_string(const Vec2i& v)
{
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace tmh
