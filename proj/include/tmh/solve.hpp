#pragma once

#include "tmh/poly.hpp"

#include <optional>
#include <vector>

namespace tmh {

struct PlanarRoot {
    std::optional<Rat> s, t;  // both set when the root is rational
    double s_approx = 0, t_approx = 0;
};

struct CommonZeros {
    bool everywhere = false;  // both polynomials vanish identically
    std::vector<PlanarRoot> roots;
};

// Isolated common zeros of a and b with s, t > 0.  Throws Unsupported when
// the common zero set contains a curve.
CommonZeros positive_common_zeros(const Poly2& a, const Poly2& b);

}  // namespace tmh
