#pragma once

#include <stdexcept>
#include <string>

namespace tmh {

// iteration did not converge, or a numeric certificate was violated
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input outside what the solvers handle (zero curves, interior trees, ...)
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tmh
