#include "doctest.h"
#include "freyforge/class_data.hpp"
#include "freyforge/units.hpp"
#include "support.hpp"

#include <cmath>
#include <numeric>

using namespace freyforge;
using namespace freyforge::testing;

namespace {

long kronecker(long D, long n) {
  return mpz_kronecker(Integer(D).get_mpz_t(), Integer(n).get_mpz_t());
}

// Dirichlet: h = -(w / 2|D|) sum_{a < |D|} chi(a) a for D < 0.
long dirichlet_h(long D) {
  long sum = 0;
  for (long a = 1; a < -D; ++a) sum += kronecker(D, a) * a;
  const long w = D == -3 ? 6 : D == -4 ? 4 : 2;
  return -(w * sum) / (2 * -D);
}

// Independent count of reduced definite forms |b| <= a <= c, b >= 0 on the boundary, primitive.
long brute_reduced_count(long D) {
  long count = 0;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

// Smallest unit > 1 by direct search over x^2 - d y^2 = +-1 (or +-4 with half-integers).
std::pair<Rational, Rational> pell_unit(long d) {
  const bool half = ((d % 4) + 4) % 4 == 1;
  for (long y = 1;; ++y) {
    for (long target : {-1L, 1L}) {
      const long scale = half ? 4 : 1;
      const Integer rhs = Integer(d) * y * y + target * scale;
      if (rhs <= 0) continue;
      Integer x;
      if (mpz_perfect_square_p(rhs.get_mpz_t())) {
        mpz_sqrt(x.get_mpz_t(), rhs.get_mpz_t());
        if (!half) return {Rational(x), Rational(y)};
        Rational s(x, 2), t(y, 2);
        s.canonicalize();
        t.canonicalize();
        return {s, t};
      }
    }
  }
}

// Real field: h log(eps) = -(1/2) sum_{a < D} chi(a) log sin(pi a / D).
long analytic_real_h(long D, double log_eps) {
  double sum = 0;
  for (long a = 1; a < D; ++a) sum += kronecker(D, a) * std::log(std::sin(M_PI * double(a) / double(D)));
  return std::lround(-0.5 * sum / log_eps);
}

double log_of(const FieldElement& e) {
  const auto [s, t] = e.sqrt_coords();
  return std::log(s.get_d() + t.get_d() * std::sqrt(double(e.field().d())));
}

}  // namespace

TEST_CASE("class_data examples") {
  auto cd = class_data(QuadraticField::make(-5));
  CHECK(cd.h == 2);
  CHECK(cd.h_plus == 2);
  const auto forms = reduced_forms(Integer(-20));
  REQUIRE(forms.size() == 2);
  CHECK(forms[0] == Form{1, 0, 5});
  CHECK(forms[1] == Form{2, 2, 3});

  const auto k5 = QuadraticField::make(5);
  cd = class_data(k5);
  CHECK(cd.h == 1);
  CHECK(cd.h_plus == 1);
  CHECK(cd.unit_norm == -1);
  CHECK(cd.fundamental_unit == std::optional<FieldElement>(FieldElement(k5, 0, 1)));

  const auto k3 = QuadraticField::make(3);
  cd = class_data(k3);
  CHECK(cd.h == 1);
  CHECK(cd.h_plus == 2);
  CHECK(cd.unit_norm == 1);
  CHECK(cd.fundamental_unit == std::optional<FieldElement>(FieldElement(k3, 2, 1)));

  CHECK(class_data(QuadraticField::make(1)) == ClassData{});
  CHECK(class_data(QuadraticField::make(79)).h == 3);
  CHECK(class_data(QuadraticField::make(-23)).h == 3);
  CHECK(class_data(QuadraticField::make(-21)).h == 4);
}

TEST_CASE("class_data respects the |d| bound") {
  Limits tight;
  tight.max_abs_d = 100;
  CHECK(error_code([&] { class_data(QuadraticField::make(101), tight); }) == ErrorCode::ResourceLimit);
  CHECK_FALSE(error_code([&] { class_data(QuadraticField::make(97), tight); }));
}

TEST_CASE("imaginary class numbers against Dirichlet's formula and a brute-force form count") {
  for (long d : squarefree_range(-800, -1)) {
    const auto field = QuadraticField::make(d);
    const long D = field.disc();
    const auto cd = class_data(field);
    CHECK_MESSAGE(cd.h == dirichlet_h(D), "d=" << d);
    CHECK_MESSAGE(cd.h == brute_reduced_count(D), "d=" << d);
    CHECK(cd.h_plus == cd.h);
    CHECK(static_cast<long>(reduced_forms(Integer(D), FormOrder::Descending).size()) == cd.h);
  }
}

TEST_CASE("real fields: unit against Pell search, h against the analytic formula") {
  for (long d : squarefree_range(2, 150)) {
    const auto field = QuadraticField::make(d);
    const auto cd = class_data(field);
    REQUIRE(cd.fundamental_unit);
    const auto [s, t] = cd.fundamental_unit->sqrt_coords();
    const auto [ps, pt] = pell_unit(d);
    CHECK_MESSAGE(s == ps, "d=" << d);
    CHECK_MESSAGE(t == pt, "d=" << d);
    CHECK(cd.fundamental_unit->is_integral());
    CHECK(cd.fundamental_unit->norm() == cd.unit_norm);
    CHECK(cd.h_plus == (cd.unit_norm == -1 ? cd.h : 2 * cd.h));
    CHECK_MESSAGE(cd.h == analytic_real_h(field.disc(), log_of(*cd.fundamental_unit)), "d=" << d);
    CHECK(class_data(field, {}, FormOrder::Descending) == cd);
  }
}

TEST_CASE("forms: reduction, composition, cycles") {
  for (long D : {-20L, -84L, -23L, -47L, -71L}) {
    const auto forms = reduced_forms(Integer(D));
    for (const Form& f : forms) {
      CHECK(is_reduced(f));
      CHECK(f.discriminant() == D);
      CHECK(compose(f, principal_form(Integer(D))) == f);
    }
  }
  // Cl(-23) is cyclic of order 3
  const Form g{2, 1, 3};
  CHECK(wide_class_order(g) == 3);
  CHECK(reduce(compose(compose(g, g), g)) == principal_form(Integer(-23)));
  for (const auto& cyc : form_cycles(Integer(316))) {
    for (const Form& f : cyc) CHECK(is_reduced(f));
    CHECK(rho(cyc.back()) == cyc.front());
  }
  CHECK(form_cycles(Integer(316)).size() == 6);
}

TEST_CASE("class order of the prime above 2") {
  const auto km5 = QuadraticField::make(-5);
  CHECK(prime_class_order(s_k(km5)[0]) == 2);
  CHECK(form_of_prime(s_k(km5)[0]) == Form{2, 2, 3});
  CHECK(prime_class_order(s_k(QuadraticField::make(5))[0]) == 1);
  CHECK(prime_class_order(s_k(QuadraticField::make(-1))[0]) == 1);
  for (const auto& prime : s_k(QuadraticField::make(-15))) CHECK(prime_class_order(prime) == 2);
}

TEST_CASE("roots of unity and norm equations") {
  CHECK(UnitContext(QuadraticField::make(-1)).roots_of_unity().size() == 4);
  CHECK(UnitContext(QuadraticField::make(-3)).roots_of_unity().size() == 6);
  CHECK(UnitContext(QuadraticField::make(2)).roots_of_unity().size() == 2);
  CHECK(UnitContext(QuadraticField::make(1)).roots_of_unity().size() == 2);
  for (long d : {-3L, -1L, -7L}) {
    const UnitContext ctx(QuadraticField::make(d));
    for (const auto& z : ctx.roots_of_unity()) {
      CHECK(z.pow(12) == FieldElement(ctx.field(), 1));
    }
  }
  // Gaussian integers of norm 25: (+-5, 0) etc, 12 in total
  const UnitContext gi(QuadraticField::make(-1));
  long count = 0;
  for (const auto& e : gi.elements_of_norm(Integer(25))) count += e.norm() == 25;
  CHECK(count == 12);
}

TEST_CASE("pth_roots recovers c from c^p") {
  for (long d : kCoreFields) {
    const UnitContext ctx(QuadraticField::make(d));
    for (int t = 0; t < 60; ++t) {
      const FieldElement c = random_nonzero(ctx.field(), 30);
      for (long p : {3L, 5L, 7L}) {
        const auto roots = ctx.pth_roots(c.pow(p), p);
        CHECK(std::find(roots.begin(), roots.end(), c) != roots.end());
        for (const auto& r : roots) CHECK(r.pow(p) == c.pow(p));
      }
    }
  }
  // units of large height in real fields
  const UnitContext k2(QuadraticField::make(2));
  const FieldElement c = FieldElement(k2.field(), 3, 1) * k2.fundamental_unit()->pow(9);
  const auto roots = k2.pth_roots(c.pow(5), 5);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == c);
  CHECK(k2.pth_roots(FieldElement(k2.field(), 2), 3).empty());
}

TEST_CASE("s_units_bounded examples") {
  const UnitContext q(QuadraticField::make(1));
  auto units = s_units_bounded(q, s_k(q.field()), 3);
  CHECK(units.size() == 14);
  for (long k = -3; k <= 3; ++k) {
    const FieldElement two_k = FieldElement(q.field(), 2).pow(k);
    CHECK(std::find(units.begin(), units.end(), two_k) != units.end());
    CHECK(std::find(units.begin(), units.end(), -two_k) != units.end());
  }
  const UnitContext gi(QuadraticField::make(-1));
  units = s_units_bounded(gi, s_k(gi.field()), 1);
  CHECK(units.size() == 12);
  for (const auto& u : units) {
    const auto n = u.norm();
    CHECK((n == Rational(1, 2) || n == 1 || n == 2));
  }
  CHECK(s_units_bounded(gi, s_k(gi.field()), 0).size() == 4);
  CHECK(error_code([&] { s_units_bounded(gi, s_k(gi.field()), -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("s_units_bounded is closed under inversion and negation, no duplicates, only S-units") {
  for (long d : {1L, -1L, 2L, 5L, -7L, -5L, 17L, 10L, -15L}) {
    const UnitContext ctx(QuadraticField::make(d));
    const auto primes = s_k(ctx.field());
    const auto units = s_units_bounded(ctx, primes, 2);
    CHECK(std::adjacent_find(units.begin(), units.end()) == units.end());
    for (const auto& u : units) {
      CHECK(std::binary_search(units.begin(), units.end(), -u, element_less));
      CHECK(std::binary_search(units.begin(), units.end(), u.inverse(), element_less));
      // S-unit: valuation zero away from 2, i.e. |norm| a power of 2
      Rational n = abs(u.norm());
      const auto v = *valuation_p(n, Integer(2));
      CHECK(n == (v >= 0 ? Rational(pow(Integer(2), v)) : Rational(1, pow(Integer(2), -v))));
    }
    const SUnitBasis basis = s_unit_basis(ctx, primes);
    for (std::size_t i = 0; i < basis.generators.size(); ++i) {
      for (std::size_t k = 0; k < primes.size(); ++k) {
        CHECK(valuation(basis.generators[i], primes[k]) == Valuation(basis.exponent_basis[i][k]));
      }
    }
  }
}
