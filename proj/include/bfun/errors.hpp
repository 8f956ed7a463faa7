#pragma once

#include <stdexcept>
#include <string>

namespace bfun {

// Bad arguments, exceeded resource guards: CLI exit code 2.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

// A mathematical identity failed to hold: CLI exit code 1.
struct math_error : std::runtime_error {
    explicit math_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace bfun
