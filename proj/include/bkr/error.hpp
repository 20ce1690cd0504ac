#pragma once

#include <stdexcept>
#include <string>

namespace bkr {

/// Invalid parameters or configuration (bad flag values, schema/kernel
/// mismatches, out-of-range options). Maps to CLI exit code 1.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data (unparsable cells, ragged vectors,
/// size mismatches, non-finite values). Maps to CLI exit code 2.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerically degenerate problem (constant kernels, all-identical points,
/// vanishing HSIC denominators). Maps to CLI exit code 3.
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bkr
