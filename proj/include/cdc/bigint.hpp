#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace cdc {

/// Exact arbitrary-precision integer used for every count and bound.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount ipow(unsigned base, unsigned exponent) {
    return boost::multiprecision::pow(BigCount(base), exponent);
}

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline BigCount parse_decimal(std::string_view s) {
    if (s.empty()) throw InvalidParameter("empty decimal string");
    for (char c : s)
        if (c < '0' || c > '9') throw InvalidParameter("not a decimal integer: " + std::string(s));
    return BigCount(std::string(s));
}

/// Narrow to uint64, throwing if the value does not fit.
inline std::uint64_t to_u64(const BigCount& v) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
        throw BudgetExceeded("count " + v.str() + " does not fit in 64 bits");
    return v.convert_to<std::uint64_t>();
}

}  // namespace cdc
