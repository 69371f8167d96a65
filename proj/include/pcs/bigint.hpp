#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcs {

using BigInt = boost::multiprecision::cpp_int;

} // namespace pcs
