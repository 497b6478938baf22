#pragma once

#include "tmh/composition.hpp"

#include <string>
#include <vector>

namespace tmh::props {

struct Check {
    bool ok = true;
    std::size_t cases = 0;
    double worst = 0;
    std::size_t hits = 0;  // completeness: grid points below the zero threshold
    std::string detail;  // first failure
};

// distance in moment coordinates from x to the carrier of comp
double carrier_distance(const ToricGeometry& g, const Component& comp, Vec2d x);

// centred differences of f_I in flat coordinates against the field, relative with unit floor
Check gradient_check(const ToricGeometry& g, std::size_t pairs, std::size_t points, unsigned seed);
// centred differences of psi against the moment map
Check moment_gradient_check(const ToricGeometry& g, std::size_t points, unsigned seed);
// moment_map(inverse_moment_map(p)) = p at random interior points
Check round_trip(const ToricGeometry& g, std::size_t points, unsigned seed);
// f_I >= 0 on an n x n grid and on n samples per edge, zero exactly near the carrier
Check zero_set(const ToricGeometry& g, const HomTable& t, int n);
// no zero of the field on an n x n grid further than two cells from every reported component
Check completeness(const ToricGeometry& g, const std::vector<BundleClass>& collection, int n);

}  // namespace tmh::props
