#include "freyforge/integer.hpp"

#include "freyforge/error.hpp"

#include <algorithm>
#include <map>

namespace freyforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::DegenerateSolution: return "DegenerateSolution";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::ConstructionUndefined: return "ConstructionUndefined";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ExponentTooSmall: return "ExponentTooSmall";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::WrongPrime: return "WrongPrime";
  }
  return "Unknown";
}

Valuation valuation_p(const Integer& n, const Integer& p) {
  if (n == 0) return std::nullopt;
  Integer m = n;
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

Valuation valuation_p(const Rational& q, const Integer& p) {
  if (q == 0) return std::nullopt;
  return *valuation_p(q.get_num(), p) - *valuation_p(q.get_den(), p);
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

namespace {

// Brent's variant of Pollard rho; n is an odd composite.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1, t;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) {
      Integer w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          t = abs(x - y);
          q = (q * t) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        t = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  if (auto r = exact_root(n, 2)) {
    std::map<Integer, long> half;
    factor_into(*r, half);
    for (auto& [q, e] : half) out[q] += 2 * e;
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, long>> factor(const Integer& n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot factor zero");
  Integer m = abs(n);
  std::map<Integer, long> out;
  for (unsigned long q = 2; q < 10000 && q * q <= m; q += (q == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      m /= q;
      out[Integer(q)] += 1;
    }
  }
  factor_into(m, out);
  return {out.begin(), out.end()};
}

std::optional<Integer> exact_root(const Integer& n, unsigned long k) {
  if (k == 0) return std::nullopt;
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto num = exact_root(q.get_num(), 2);
  if (!num) return std::nullopt;
  auto den = exact_root(q.get_den(), 2);
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

bool is_squarefree(const Integer& n, Integer* square_factor) {
  if (n == 0) return false;
  for (const auto& [q, e] : factor(n)) {
    if (e >= 2) {
      if (square_factor) *square_factor = q * q;
      return false;
    }
  }
  return true;
}

std::optional<Integer> sqrt_mod(const Integer& a_in, const Integer& p) {
  Integer a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return Integer(0);
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  // Tonelli-Shanks
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer m_exp = (q + 1) / 2;
  Integer c, x, t, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), m_exp.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return x;
}

Integer reduce_mod(const Rational& q, const Integer& p) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InvalidArgument, "rational is not p-integral");
  }
  Integer r = (q.get_num() * inv) % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace freyforge
