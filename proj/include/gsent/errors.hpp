#pragma once

#include <stdexcept>
#include <string>

namespace gsent {

// Malformed or inconsistent caller input (bad labels, dimension mismatch,
// out-of-range parameters, unparsable files).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured resource limit (dense dimension, Kraus list
// length, pattern support width).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quantifier cannot be evaluated on the boundary at hand.
struct UnsupportedQuantifierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gsent
