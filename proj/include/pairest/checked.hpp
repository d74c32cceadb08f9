#pragma once

#include <cstdint>
#include <string>

#include "pairest/error.hpp"

namespace pairest {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "pair count sum exceeds 64 bits");
  }
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "pair count product exceeds 64 bits");
  }
  return out;
}

/// n choose 2, erroring instead of wrapping.
inline std::uint64_t choose2(std::uint64_t n) {
  if (n < 2) return 0;
  // one of n, n-1 is even; halve it first so the product is exact
  return (n % 2 == 0) ? checked_mul(n / 2, n - 1) : checked_mul(n, (n - 1) / 2);
}

}  // namespace pairest
