#include "freyforge/forms.hpp"

#include "freyforge/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace freyforge {

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer mod_positive(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Form with_b(const Integer& a, const Integer& b, const Integer& disc) {
  Integer num = b * b - disc;
  Integer den = 4 * a;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw std::logic_error("form coefficients inconsistent with discriminant");
  }
  return Form{a, b, num / den};
}

Form reduce_definite(Form f) {
  const Integer disc = f.discriminant();
  for (;;) {
    // normalize b into (-a, a]
    const Integer two_a = 2 * f.a;
    Integer r = mod_positive(f.b, two_a);
    if (r > f.a) r -= two_a;
    f = with_b(f.a, r, disc);
    if (f.a > f.c) {
      f = Form{f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

}  // namespace

bool Form::is_primitive() const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g == 1;
}

Form principal_form(const Integer& disc) {
  const Integer r = mod_positive(disc, 4);
  if (r == 0) return Form{1, 0, -disc / 4};
  if (r == 1) return Form{1, 1, (1 - disc) / 4};
  throw Error(ErrorCode::InvalidArgument, "not a discriminant: " + disc.get_str());
}

bool is_reduced(const Form& f) {
  const Integer disc = f.discriminant();
  if (disc < 0) {
    if (f.a <= 0) return false;
    if (abs(f.b) > f.a || f.a > f.c) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
  }
  const Integer s = isqrt(disc);
  if (f.b <= 0 || f.b > s) return false;
  const Integer two_a = 2 * abs(f.a);
  const Integer lo = two_a + f.b;
  if (lo <= 0 || lo * lo <= disc) return false;
  const Integer hi = two_a - f.b;
  if (hi > 0 && hi * hi >= disc) return false;
  return true;
}

Form rho(const Form& f) {
  const Integer disc = f.discriminant();
  const Integer s = isqrt(disc);
  const Integer abs_c = abs(f.c);
  const Integer two_c = 2 * abs_c;
  Integer r;
  if (f.c * f.c > disc) {
    r = mod_positive(-f.b, two_c);
    if (r > abs_c) r -= two_c;
  } else {
    // largest r = -b (mod 2|c|) with r <= floor(sqrt(D))
    r = s - mod_positive(s + f.b, two_c);
  }
  return with_b(f.c, r, disc);
}

Form reduce(Form f) {
  if (f.discriminant() < 0) {
    if (f.a < 0) throw Error(ErrorCode::InvalidArgument, "negative definite form");
    return reduce_definite(f);
  }
  for (long steps = 0; !is_reduced(f); ++steps) {
    if (steps > 100000) throw std::logic_error("indefinite reduction did not terminate");
    f = rho(f);
  }
  return f;
}

Form compose(const Form& f, const Form& g) {
  const Integer disc = f.discriminant();
  if (disc != g.discriminant()) throw Error(ErrorCode::InvalidArgument, "composition of different discriminants");
  const Integer beta = (f.b + g.b) / 2;
  Integer x1, y1, x2, y2;
  const Integer g1 = gcdext(f.a, g.a, x1, y1);
  const Integer e = gcdext(g1, beta, x2, y2);
  const Integer u = x2 * x1, v = x2 * y1, w = y2;
  const Integer a3 = f.a * g.a / (e * e);
  Integer num = u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + disc) / 2;
  if (!mpz_divisible_p(num.get_mpz_t(), e.get_mpz_t())) throw std::logic_error("composition: b3 not integral");
  Integer b3 = num / e;
  const Integer two_a3 = 2 * abs(a3);
  b3 = mod_positive(b3, two_a3);
  if (b3 > abs(a3)) b3 -= two_a3;
  return reduce(with_b(a3, b3, disc));
}

std::vector<Form> cycle_of(const Form& f) {
  std::vector<Form> cycle{f};
  Form cur = rho(f);
  while (!(cur == f)) {
    cycle.push_back(cur);
    if (cycle.size() > 10000000) throw Error(ErrorCode::ResourceLimit, "cycle too long");
    cur = rho(cur);
  }
  return cycle;
}

std::vector<Form> reduced_forms(const Integer& disc, FormOrder order) {
  std::vector<Form> out;
  const bool b_odd = mpz_odd_p(disc.get_mpz_t());
  if (disc < 0) {
    for (Integer a = 1; 3 * a * a <= -disc; ++a) {
      for (Integer b = -a + 1; b <= a; ++b) {
        if (mpz_odd_p(b.get_mpz_t()) != b_odd) continue;
        Integer num = b * b - disc;
        if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * a).get_mpz_t())) continue;
        Form f{a, b, num / (4 * a)};
        if (is_reduced(f) && f.is_primitive()) out.push_back(f);
      }
    }
  } else {
    const Integer s = isqrt(disc);
    for (Integer b = b_odd ? 1 : 2; b <= s; b += 2) {
      const Integer n = (disc - b * b) / 4;  // a c = -n
      for (Integer a = 1; a <= s; ++a) {
        if (!mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t())) continue;
        for (int sign : {1, -1}) {
          Form f{sign * a, b, -n / (sign * a)};
          if (is_reduced(f) && f.is_primitive()) out.push_back(f);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (order == FormOrder::Descending) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Form>> form_cycles(const Integer& disc, FormOrder order) {
  if (disc < 0) throw Error(ErrorCode::InvalidArgument, "cycles are defined for indefinite forms");
  std::vector<Form> forms = reduced_forms(disc, order);
  std::set<Form> seen;
  std::vector<std::vector<Form>> cycles;
  for (const Form& f : forms) {
    if (seen.count(f)) continue;
    std::vector<Form> cycle = cycle_of(f);
    for (const Form& g : cycle) seen.insert(g);
    auto start = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), start, cycle.end());
    cycles.push_back(std::move(cycle));
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& l, const auto& r) { return l.front() < r.front(); });
  return cycles;
}

bool is_wide_principal(const Form& f) {
  Form r = reduce(f);
  if (r.discriminant() < 0) return r.a == 1;
  for (const Form& g : cycle_of(r)) {
    if (abs(g.a) == 1) return true;
  }
  return false;
}

long wide_class_order(const Form& f, long max_order) {
  const Form g = reduce(f);
  Form cur = g;
  for (long k = 1; k <= max_order; ++k) {
    if (is_wide_principal(cur)) return k;
    cur = compose(cur, g);
  }
  throw Error(ErrorCode::ResourceLimit, "class order exceeds " + std::to_string(max_order));
}

}  // namespace freyforge
