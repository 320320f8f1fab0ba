#pragma once

#include <stdexcept>
#include <string>

namespace khb {

// Input that fails the grammar or an argument precondition.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap (crossing limit, object cap, shape cap) was exceeded.
struct LimitError : std::runtime_error {
    explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// classify3 could not decide without the mirror's normal form.
struct UndeterminedError : std::runtime_error {
    explicit UndeterminedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace khb
