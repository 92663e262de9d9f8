#include "freyforge/class_data.hpp"

#include "freyforge/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace freyforge {

FieldElement fundamental_unit(const QuadraticField& field) {
  if (!field.is_real()) throw Error(ErrorCode::InvalidArgument, "fundamental unit requested for " + field.name());
  const Integer d = static_cast<long>(field.d());
  Integer s;
  mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
  const bool half = field.basis_kind() == BasisKind::Half;
  // w = (P + sqrt d) / Q with Q | d - P^2
  Integer P = half ? 1 : 0;
  Integer Q = half ? 2 : 1;
  Integer h_prev = 1, h_prev2 = 0, g_prev = 0, g_prev2 = 1;
  for (long k = 0; k < 100000000; ++k) {
    if (Q <= 0) throw std::logic_error("continued fraction left the reduced range");
    Integer a;
    Integer num = P + s;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    const Integer h = a * h_prev + h_prev2;
    const Integer g = a * g_prev + g_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    g_prev2 = g_prev;
    g_prev = g;
    // h/g approximates w, so the conjugate of the candidate is small.
    FieldElement candidate = half ? FieldElement(field, Rational(h - g), Rational(g))
                                  : FieldElement(field, Rational(h), Rational(g));
    const Rational n = candidate.norm();
    if (n == 1 || n == -1) return candidate;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw Error(ErrorCode::ResourceLimit, "continued fraction period too long for " + field.name());
}

ClassData class_data(const QuadraticField& field, const Limits& limits, FormOrder order) {
  if (field.is_rational()) return ClassData{};
  const std::int64_t abs_d = field.d() < 0 ? -field.d() : field.d();
  if (abs_d > limits.max_abs_d) {
    throw Error(ErrorCode::ResourceLimit,
                "|d| = " + std::to_string(abs_d) + " exceeds class-data bound " + std::to_string(limits.max_abs_d));
  }
  const Integer disc = static_cast<long>(field.disc());
  ClassData out;
  if (field.is_imaginary()) {
    out.h = static_cast<long>(reduced_forms(disc, order).size());
    out.h_plus = out.h;
    return out;
  }
  const auto cycles = form_cycles(disc, order);
  out.h_plus = static_cast<long>(cycles.size());
  // Wide classes: identify a cycle with the cycle of its negative (-a, b, -c).
  std::set<Form> representatives;
  for (const auto& cycle : cycles) {
    const Form& head = cycle.front();
    std::vector<Form> negated = cycle_of(Form{-head.a, head.b, -head.c});
    const Form& neg_min = *std::min_element(negated.begin(), negated.end());
    representatives.insert(std::min(head, neg_min));
  }
  out.h = static_cast<long>(representatives.size());
  out.fundamental_unit = fundamental_unit(field);
  out.unit_norm = out.fundamental_unit->norm() == 1 ? 1 : -1;
  const long expected = out.unit_norm == 1 ? 2 * out.h : out.h;
  if (out.h_plus != expected) {
    throw std::logic_error("narrow class number inconsistent with unit norm for " + field.name());
  }
  return out;
}

Form form_of_prime(const PrimeIdealAbove& prime) {
  const QuadraticField field = prime.field();
  const Integer disc = static_cast<long>(field.disc());
  if (field.degree() == 1 || prime.splitting == Splitting::Inert) return principal_form(disc);
  const Integer& p = prime.rational_prime;
  const Integer b = field.basis_kind() == BasisKind::Half ? Integer(2 * prime.residue - 1) : Integer(2 * prime.residue);
  Integer num = b * b - disc;
  if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * p).get_mpz_t())) {
    throw std::logic_error("prime ideal does not give an integral form");
  }
  return Form{p, b, num / (4 * p)};
}

long prime_class_order(const PrimeIdealAbove& prime) {
  if (prime.field().degree() == 1 || prime.splitting == Splitting::Inert) return 1;
  return wide_class_order(form_of_prime(prime));
}

}  // namespace freyforge
