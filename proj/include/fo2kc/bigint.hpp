#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fo2kc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(long k) { return BigInt(1) << k; }

} // namespace fo2kc
