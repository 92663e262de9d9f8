#pragma once

#include "freyforge/error.hpp"
#include "freyforge/field.hpp"

#include <optional>
#include <random>
#include <vector>

namespace freyforge::testing {

// Fields that appear throughout the acceptance criteria.
inline const std::vector<long> kCoreFields = {1, -1, 2, 5, -7};

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline FieldElement random_integral(const QuadraticField& field, long range) {
  const long x = uniform(-range, range);
  if (field.degree() == 1) return FieldElement(field, x);
  return FieldElement(field, x, uniform(-range, range));
}

inline FieldElement random_nonzero(const QuadraticField& field, long range) {
  for (;;) {
    FieldElement e = random_integral(field, range);
    if (!e.is_zero()) return e;
  }
}

// Error code thrown by fn, or nullopt when it returns normally.
template <class F>
std::optional<ErrorCode> error_code(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<long> squarefree_range(long lo, long hi) {
  std::vector<long> out;
  for (long d = lo; d <= hi; ++d) {
    if (d == 0 || d == 1) continue;
    bool ok = true;
    for (long q = 2; q * q <= std::labs(d); ++q) {
      if (d % (q * q) == 0) ok = false;
    }
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace freyforge::testing
