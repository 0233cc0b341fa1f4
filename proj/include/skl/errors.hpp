#pragma once

#include <stdexcept>
#include <string>

namespace skl {

// Bad input from the user: malformed divisor spec, out-of-range degree, etc.
// CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampled or supplied object failed a structural requirement: parameter
// triple with wrong quotient dimensions, singular cubic, short sigma orbit,
// divisor with a repeated point.  CLI maps this to exit code 3.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exhausted a configured budget: degree cap, retry limit, exact-integer
// overflow in characteristic-zero mode.  CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace skl
