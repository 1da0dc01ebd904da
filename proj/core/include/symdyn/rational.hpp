#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace symdyn {

/// Exact ratio type used for recurrence constants and bound verdicts.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace symdyn
