#include "tmh/logvalue.hpp"

#include <cmath>
#include <stdexcept>

namespace tmh {

std::vector<std::pair<Int, unsigned>> factor(Int n)
{
    if (n <= 0)
        throw std::domain_error("factor: nonpositive");
    std::vector<std::pair<Int, unsigned>> out;
    auto take = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    };
    take(Int(2));
    for (long p = 3; p <= 1000003; p += 2) {
        if (Int(p) * p > n)
            break;
        take(Int(p));
    }
    if (n > 1)
        out.emplace_back(n, 1u);
    return out;
}

void LogValue::add(const Int& p, const Rat& q)
{
    if (q == 0 || p == 1)
        return;
    auto [it, ins] = terms_.try_emplace(p, q);
    if (!ins) {
        it->second += q;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LogValue LogValue::log_of(const Rat& r, const Rat& q)
{
    if (r.sign() <= 0)
        throw std::domain_error("log of nonpositive value");
    LogValue v;
    for (auto [p, e] : factor(num(r)))
        v.add(p, q * e);
    for (auto [p, e] : factor(den(r)))
        v.add(p, -q * e);
    return v;
}

LogValue LogValue::rational(const Rat& x)
{
    LogValue v;
    v.linear_ = x;
    return v;
}

LogValue& LogValue::operator+=(const LogValue& o)
{
    for (const auto& [p, q] : o.terms_)
        add(p, q);
    linear_ += o.linear_;
    return *this;
}

LogValue LogValue::operator+(const LogValue& o) const
{
    LogValue r = *this;
    r += o;
    return r;
}

LogValue LogValue::operator-(const LogValue& o) const { return *this + o * Rat(-1); }

LogValue LogValue::operator*(const Rat& k) const
{
    LogValue r;
    if (k == 0)
        return r;
    for (const auto& [p, q] : terms_)
        r.terms_.emplace(p, q * k);
    r.linear_ = linear_ * k;
    return r;
}

double LogValue::value() const
{
    long double v = to_double(linear_);
    for (const auto& [p, q] : terms_)
        v += static_cast<long double>(to_double(q)) * std::log(static_cast<long double>(p.convert_to<double>()));
    return static_cast<double>(v);
}

std::optional<Rat> LogValue::exp_neg_rational() const
{
    if (linear_ != 0)
        return std::nullopt;
    Rat out = 1;
    for (const auto& [p, q] : terms_) {
        if (!is_integer(q))
            return std::nullopt;
        long e = num(q).convert_to<long>();
        Rat base = e > 0 ? Rat(1) / Rat(p) : Rat(p);
        for (long i = 0; i < std::labs(e); ++i)
            out *= base;
    }
    return out;
}

std::string LogValue::exp_neg_str() const
{
    if (auto r = exp_neg_rational())
        return to_string(*r);
    std::string out;
    for (const auto& [p, q] : terms_) {
        if (!out.empty())
            out += "*";
        out += p.str() + "^(" + to_string(-q) + ")";
    }
    if (linear_ != 0) {
        if (!out.empty())
            out += "*";
        out += "exp(" + to_string(-linear_) + ")";
    }
    return out;
}

std::string LogValue::str() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (const auto& [p, q] : terms_) {
        Rat a = q;
        if (a.sign() < 0) {
            out += out.empty() ? "-" : " - ";
            a = -a;
        } else if (!out.empty()) {
            out += " + ";
        }
        if (a != 1)
            out += to_string(a) + "*";
        out += "log " + p.str();
    }
    if (linear_ != 0) {
        if (!out.empty())
            out += linear_.sign() < 0 ? " - " : " + ";
        else if (linear_.sign() < 0)
            out += "-";
        out += to_string(abs(linear_));
    }
    return out;
}

}  // namespace tmh
