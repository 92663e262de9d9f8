#include "freyforge/frey.hpp"

#include "freyforge/error.hpp"

namespace freyforge {

namespace {

FieldElement k_int(const QuadraticField& f, long n) { return FieldElement(f, Rational(n)); }

}  // namespace

bool Solution::satisfies_equation() const {
  return a.pow(4) - b * b == c.pow(p);
}

std::string Solution::to_string() const {
  return "(" + a.to_string() + "; " + b.to_string() + "; " + c.to_string() + "), p=" + std::to_string(p);
}

WeierstrassInvariants weierstrass_invariants(const WeierstrassModel& m) {
  const auto& [a1, a2, a3, a4, a6] = m;
  const QuadraticField& f = a1.field();
  WeierstrassInvariants w;
  w.b2 = a1 * a1 + k_int(f, 4) * a2;
  w.b4 = k_int(f, 2) * a4 + a1 * a3;
  w.b6 = a3 * a3 + k_int(f, 4) * a6;
  w.b8 = a1 * a1 * a6 + k_int(f, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  w.c4 = w.b2 * w.b2 - k_int(f, 24) * w.b4;
  w.c6 = -(w.b2 * w.b2 * w.b2) + k_int(f, 36) * w.b2 * w.b4 - k_int(f, 216) * w.b6;
  w.delta = -(w.b2 * w.b2 * w.b8) - k_int(f, 8) * w.b4 * w.b4 * w.b4 - k_int(f, 27) * w.b6 * w.b6 +
            k_int(f, 9) * w.b2 * w.b4 * w.b6;
  return w;
}

WeierstrassModel FreyCurve::model() const {
  const QuadraticField& f = a2.field();
  const FieldElement zero(f);
  return {zero, a2, zero, a4, zero};
}

bool FreyCurve::has_two_torsion_origin() const {
  const WeierstrassModel m = model();
  // y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 at (0,0) needs a6 = 0; -(0,0) = (0, -a3) = (0,0) needs a3 = 0.
  return m[4].is_zero() && m[2].is_zero();
}

FreyCurve build_frey(const Solution& s) {
  const QuadraticField f = s.field();
  const FieldElement a_sq = s.a * s.a;
  const FieldElement sum = a_sq + s.b;
  const FieldElement diff = a_sq - s.b;
  if (sum.is_zero() || diff.is_zero() || s.c.is_zero()) {
    throw Error(ErrorCode::DegenerateSolution, "degenerate triple " + s.to_string());
  }
  FreyCurve e;
  e.a2 = k_int(f, 4) * s.a;
  e.a4 = k_int(f, 2) * sum;
  e.delta = k_int(f, 512) * sum * sum * diff;
  e.c4 = k_int(f, 32) * (k_int(f, 5) * a_sq - k_int(f, 3) * s.b);
  e.j_num = e.c4 * e.c4 * e.c4;
  e.j_den = e.delta;
  return e;
}

LambdaParam lambda_of(const Solution& s) {
  const QuadraticField f = s.field();
  const FieldElement a_sq = s.a * s.a;
  const FieldElement sum = a_sq + s.b;
  const FieldElement diff = a_sq - s.b;
  if (sum.is_zero() || diff.is_zero()) {
    throw Error(ErrorCode::DegenerateSolution, "degenerate triple " + s.to_string());
  }
  LambdaParam out;
  out.lambda = k_int(f, 4) * diff / sum;
  const FieldElement l1 = out.lambda + k_int(f, 1);
  out.j = k_int(f, 256) * l1 * l1 * l1 / out.lambda;
  return out;
}

Solution construct_nonprimitive(const FieldElement& u, const FieldElement& v, long p) {
  if (p <= 3 || !is_probable_prime(Integer(p))) {
    throw Error(ErrorCode::InvalidArgument, "construct_nonprimitive needs a prime p > 3");
  }
  if (!u.is_integral() || !v.is_integral()) {
    throw Error(ErrorCode::InvalidArgument, "u and v must be integral");
  }
  const QuadraticField f = u.field();
  const FieldElement r = u.pow(4) - v * v;
  if (r.is_zero() || r == k_int(f, 1) || r == k_int(f, -1)) {
    throw Error(ErrorCode::ConstructionUndefined, "r = u^4 - v^2 = " + r.to_string() + " is excluded");
  }
  if (p % 4 == 1) {
    return Solution{u * r.pow((p - 1) / 4), v * r.pow((p - 1) / 2), r, p};
  }
  return Solution{u * r.pow((3 * p - 1) / 4), v * r.pow((3 * p - 1) / 2), r.pow(3), p};
}

Classification classify_solution(const Solution& s) {
  Classification out;
  out.is_solution = s.satisfies_equation();
  out.non_trivial = !s.a.is_zero() && !s.b.is_zero() && !s.c.is_zero();
  if (s.a.is_integral() && s.b.is_integral() && s.c.is_integral()) {
    // cheapest pair first: c is usually the smallest norm
    out.primitive = coprime(s.a, s.c) && coprime(s.b, s.c) && coprime(s.a, s.b);
  }
  return out;
}

}  // namespace freyforge
