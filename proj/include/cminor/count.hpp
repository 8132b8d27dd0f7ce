#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cminor {

/// Exact nonnegative (or, for determinants, signed) integer used for every
/// entry, weight and count in the library.
using Count = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Count& value) { return value.str(); }

}  // namespace cminor
