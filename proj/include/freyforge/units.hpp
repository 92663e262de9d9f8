#pragma once

#include "freyforge/class_data.hpp"
#include "freyforge/field.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace freyforge {

// Per-field data reused by norm-equation searches: torsion, fundamental unit, limits.
class UnitContext {
 public:
  explicit UnitContext(QuadraticField field, Limits limits = {});

  const QuadraticField& field() const { return field_; }
  const Limits& limits() const { return limits_; }
  const std::vector<FieldElement>& roots_of_unity() const { return torsion_; }
  const std::optional<FieldElement>& fundamental_unit() const { return unit_; }

  // Integral elements with |N| = m covering every principal ideal of norm m
  // (all of them for imaginary fields; a fundamental-domain box for real ones).
  std::vector<FieldElement> elements_of_norm(const Integer& m) const;

  // Integral c with c^p == n (p odd), sorted and deduplicated.
  std::vector<FieldElement> pth_roots(const FieldElement& n, long p) const;

  // k with q == +-eps^k, if q is such a unit (real fields; eps^0 = 1).
  std::optional<std::pair<long, int>> unit_log(const FieldElement& q, long step = 1) const;

 private:
  QuadraticField field_;
  Limits limits_;
  std::vector<FieldElement> torsion_;
  std::optional<FieldElement> unit_;
  Integer unit_size_bound_;
};

using IdealFactorization = std::vector<std::pair<PrimeIdealAbove, long>>;

// A generator of prod P^n (all n >= 0), or nullopt when the ideal is not principal.
std::optional<FieldElement> principal_generator(const UnitContext& ctx, const IdealFactorization& ideal);

// Generators of O_S^x modulo torsion and the fundamental unit: one element per basis
// vector of the lattice of exponent vectors n with prod P^n principal.
struct SUnitBasis {
  std::vector<FieldElement> torsion;
  std::optional<FieldElement> unit;
  std::vector<FieldElement> generators;
  std::vector<std::vector<long>> exponent_basis;
};

SUnitBasis s_unit_basis(const UnitContext& ctx, const std::vector<PrimeIdealAbove>& primes);

// zeta * eps^m * prod g_i^{n_i} with |m|, |n_i| <= bound; sorted, no duplicates.
std::vector<FieldElement> s_units_bounded(const UnitContext& ctx, const std::vector<PrimeIdealAbove>& primes,
                                          long bound);

// Total order on elements used for canonical sorting (x, then y).
bool element_less(const FieldElement& l, const FieldElement& r);

}  // namespace freyforge
