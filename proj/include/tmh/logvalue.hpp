#pragma once

#include "tmh/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmh {

// Exact number sum_p q_p log p + linear, keys are primes (or unfactored
// cofactors above the trial-division bound).
class LogValue {
public:
    LogValue() = default;
    static LogValue log_of(const Rat& r, const Rat& q = Rat(1));
    static LogValue rational(const Rat& v);

    LogValue operator+(const LogValue& o) const;
    LogValue operator-(const LogValue& o) const;
    LogValue operator-() const { return *this * Rat(-1); }
    LogValue operator*(const Rat& k) const;
    LogValue& operator+=(const LogValue& o);
    bool operator==(const LogValue& o) const { return terms_ == o.terms_ && linear_ == o.linear_; }

    bool is_zero() const { return terms_.empty() && linear_ == 0; }
    double value() const;
    const std::map<Int, Rat>& terms() const { return terms_; }
    const Rat& linear() const { return linear_; }

    // exp(-value) as a rational, when it is one
    std::optional<Rat> exp_neg_rational() const;
    // exp(-value) written as a product of rational powers
    std::string exp_neg_str() const;
    std::string str() const;

private:
    void add(const Int& p, const Rat& q);
    std::map<Int, Rat> terms_;
    Rat linear_ = 0;
};

std::vector<std::pair<Int, unsigned>> factor(Int n);

}  // namespace tmh
