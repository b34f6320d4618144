#pragma once
// Arbitrary-precision natural numbers used for spike counts, counter values
// and tape encodings, plus a few checked helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace snpsim {

using bignat = boost::multiprecision::cpp_int;

// a - b, throwing instead of producing a negative value.
inline bignat sub_checked(const bignat& a, const bignat& b) {
  if (b > a) throw std::invalid_argument("sub_checked: result would be negative");
  return a - b;
}

inline std::uint64_t mod_u64(const bignat& k, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("mod_u64: zero modulus");
  return static_cast<std::uint64_t>(k % m);
}

inline std::uint64_t to_u64(const bignat& k) {
  if (k < 0 || k > bignat(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("to_u64: value out of range");
  return static_cast<std::uint64_t>(k);
}

inline std::string to_string(const bignat& k) { return k.str(); }

inline bignat parse_bignat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_bignat: empty string");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("parse_bignat: not a natural number: " + s);
  return bignat(s);
}

// floor(a / m) and a % m in one pass, m a small positive integer.
inline bignat div_u64(const bignat& a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("div_u64: zero divisor");
  return a / m;
}

inline bignat pow_u64(std::uint64_t base, std::uint64_t exp) {
  bignat r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace snpsim
