#include "doctest.h"
#include "freyforge/frey.hpp"
#include "support.hpp"

using namespace freyforge;
using namespace freyforge::testing;

namespace {

Solution rational_triple(long a, long b, long c, long p) {
  const auto q = QuadraticField::make(1);
  return {FieldElement(q, a), FieldElement(q, b), FieldElement(q, c), p};
}

// y^2 = x^3 + A x^2 + B x has discriminant 16 B^2 (A^2 - 4B): the cubic's discriminant times 16.
FieldElement cubic_delta(const FieldElement& A, const FieldElement& B) {
  return FieldElement(A.field(), 16) * B * B * (A * A - FieldElement(A.field(), 4) * B);
}

}  // namespace

TEST_CASE("build_frey examples") {
  const auto q = QuadraticField::make(1);
  auto curve = build_frey(rational_triple(3, -7, 2, 5));
  CHECK(curve.a2 == FieldElement(q, 12));
  CHECK(curve.a4 == FieldElement(q, 4));
  CHECK(curve.delta == FieldElement(q, 32768));
  CHECK(curve.j() == FieldElement(q, 287496));
  CHECK(curve.has_two_torsion_origin());

  // 2^9 (121 + 122)^2 (121 - 122) = -512 * 243^2
  curve = build_frey(rational_triple(11, 122, -3, 5));
  CHECK(curve.delta == FieldElement(q, -30233088));
  CHECK(curve.delta == FieldElement(q, 512) * FieldElement(q, 243) * FieldElement(q, -3).pow(5));

  curve = build_frey(rational_triple(1, 0, 1, 7));
  CHECK(curve.delta == FieldElement(q, 512));
  CHECK(curve.j() == FieldElement(q, 8000));

  CHECK(error_code([] { build_frey(rational_triple(1, 1, 0, 5)); }) == ErrorCode::DegenerateSolution);
  CHECK(error_code([] { build_frey(rational_triple(1, -1, 0, 5)); }) == ErrorCode::DegenerateSolution);
}

TEST_CASE("lambda examples") {
  const auto q = QuadraticField::make(1);
  auto l = lambda_of(rational_triple(3, -7, 2, 5));
  CHECK(l.lambda == FieldElement(q, 32));
  CHECK(l.j == FieldElement(q, 287496));
  l = lambda_of(rational_triple(1, 0, 1, 3));
  CHECK(l.lambda == FieldElement(q, 4));
  CHECK(l.j == FieldElement(q, 8000));
  CHECK(error_code([] { lambda_of(rational_triple(2, 4, 0, 3)); }) == ErrorCode::DegenerateSolution);
}

TEST_CASE("Frey invariants on random triples") {
  for (long d : kCoreFields) {
    const auto field = QuadraticField::make(d);
    const FieldElement two(field, 2), five(field, 5), three(field, 3);
    for (int t = 0; t < 2000; ++t) {
      const FieldElement a = random_integral(field, 200), b = random_integral(field, 200);
      const FieldElement sum = a * a + b, diff = a * a - b;
      if (sum.is_zero() || diff.is_zero()) continue;
      const long p = std::array<long, 4>{3, 5, 7, 11}[t % 4];
      const FreyCurve curve = build_frey({a, b, random_nonzero(field, 5), p});
      const auto inv = weierstrass_invariants(curve.model());
      REQUIRE(inv.delta == two.pow(9) * sum * sum * diff);
      CHECK(inv.delta == cubic_delta(FieldElement(field, 4) * a, two * sum));
      CHECK(curve.delta == inv.delta);
      CHECK(inv.c4 == two.pow(5) * (five * a * a - three * b));
      CHECK(curve.c4 == inv.c4);
      CHECK(curve.j() * curve.delta == curve.c4.pow(3));
      CHECK(curve.has_two_torsion_origin());
      const auto l = lambda_of({a, b, FieldElement(field, 1), p});
      CHECK(l.j == curve.j());
      CHECK(l.lambda * (a * a + b) == FieldElement(field, 4) * diff);
    }
  }
}

TEST_CASE("j matches 2^6 (5a^2 - 3b)^3 / ((a^2 + b) c^p) on solutions") {
  const auto q = QuadraticField::make(1);
  for (const auto& s : {rational_triple(3, -7, 2, 5), rational_triple(11, 122, -3, 5), rational_triple(3, 7, 2, 5)}) {
    REQUIRE(s.satisfies_equation());
    const auto curve = build_frey(s);
    const FieldElement expected = FieldElement(q, 64) * (FieldElement(q, 5) * s.a * s.a - FieldElement(q, 3) * s.b).pow(3) /
                                  ((s.a * s.a + s.b) * s.c.pow(s.p));
    CHECK(curve.j() == expected);
  }
}

TEST_CASE("lambda parametrisation identity") {
  const auto q = QuadraticField::make(1);
  for (int t = 0; t < 100; ++t) {
    const FieldElement lambda(q, Rational(uniform(-500, 500), uniform(1, 60)));
    if (lambda.is_zero()) continue;
    const FieldElement j = FieldElement(q, 256) * (lambda + FieldElement(q, 1)).pow(3) / lambda;
    CHECK(j * lambda == FieldElement(q, 256) * (lambda + FieldElement(q, 1)).pow(3));
  }
}

TEST_CASE("construct_nonprimitive examples") {
  const auto q = QuadraticField::make(1);
  auto s = construct_nonprimitive(FieldElement(q, 1), FieldElement(q, 2), 5);
  CHECK(s == rational_triple(-3, 18, -3, 5));
  s = construct_nonprimitive(FieldElement(q, 1), FieldElement(q, 2), 7);
  CHECK(s == rational_triple(-243, 118098, -27, 7));
  CHECK(s.satisfies_equation());
  CHECK(error_code([&] { construct_nonprimitive(FieldElement(q, 1), FieldElement(q, 0), 5); }) ==
        ErrorCode::ConstructionUndefined);
  CHECK(error_code([&] { construct_nonprimitive(FieldElement(q, 1), FieldElement(q, 1), 5); }) ==
        ErrorCode::ConstructionUndefined);
}

TEST_CASE("classify examples") {
  const auto k2 = QuadraticField::make(2);
  auto c = classify_solution({FieldElement(k2, 1), FieldElement(k2, 0, 1), FieldElement(k2, -1), 5});
  CHECK(c.is_solution);
  CHECK(c.primitive);
  CHECK(c.non_trivial);

  c = classify_solution(rational_triple(11, 122, -3, 5));
  CHECK((c.is_solution && c.primitive && c.non_trivial));
  c = classify_solution(rational_triple(-3, 18, -3, 5));
  CHECK(c.is_solution);
  CHECK_FALSE(c.primitive);
  c = classify_solution(rational_triple(1, 0, 1, 5));
  CHECK(c.is_solution);
  CHECK_FALSE(c.non_trivial);
  CHECK_FALSE(classify_solution(rational_triple(2, 3, 1, 5)).is_solution);
}

TEST_CASE("constructed solutions are solutions and never primitive") {
  const std::array<long, 4> primes{5, 7, 11, 13};
  for (long d : kCoreFields) {
    const auto field = QuadraticField::make(d);
    for (int t = 0; t < 150; ++t) {
      const FieldElement u = random_integral(field, 6), v = random_integral(field, 6);
      const FieldElement r = u.pow(4) - v * v;
      const long p = primes[t % primes.size()];
      const Rational n = r.norm();
      const FieldElement one(field, 1);
      if (r.is_zero() || r == one || r == -one) {
        CHECK(error_code([&] { construct_nonprimitive(u, v, p); }) == ErrorCode::ConstructionUndefined);
        continue;
      }
      const Solution s = construct_nonprimitive(u, v, p);
      const auto cls = classify_solution(s);
      CHECK(cls.is_solution);
      // a unit r other than +-1 gives a genuine construction that may well be primitive
      if (n != 1 && n != -1) CHECK_FALSE(cls.primitive);
    }
  }
}
