#pragma once

#include "freyforge/field.hpp"
#include "freyforge/forms.hpp"

#include <optional>

namespace freyforge {

struct Limits {
  // Largest |d| accepted by class_data.
  std::int64_t max_abs_d = 1000000;
  // Iteration cap for bounded element searches (generators, norm equations).
  long max_search_steps = 50000000;
};

struct ClassData {
  long h = 1;
  long h_plus = 1;
  // Real quadratic fields only.
  std::optional<FieldElement> fundamental_unit;
  int unit_norm = 0;

  friend bool operator==(const ClassData&, const ClassData&) = default;
};

// Fundamental unit > 1 of a real quadratic field from the continued fraction of w.
FieldElement fundamental_unit(const QuadraticField& field);

// Class number and narrow class number: reduced definite forms for d < 0, cycles of
// reduced indefinite forms for d > 0 (h_plus = #cycles, h = #cycles modulo f -> -f).
ClassData class_data(const QuadraticField& field, const Limits& limits = {},
                     FormOrder order = FormOrder::Ascending);

// Form attached to a prime ideal (p, w - r): the Z-basis [p, w - r] written as [a, (-b + sqrt(D))/2].
Form form_of_prime(const PrimeIdealAbove& prime);

// Order of [P] in the (wide) class group Cl(K).
long prime_class_order(const PrimeIdealAbove& prime);

}  // namespace freyforge
