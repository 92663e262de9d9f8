#pragma once

// Small independent reference computations shared by the unit and acceptance tests.
// Plain long arithmetic on purpose; nothing here calls into the library's form code.

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace freyforge::testing {

inline long isqrt_floor(long n) {
  long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

struct CycleCounts {
  long h = 0;       // cycles modulo (a, b, c) -> (-a, b, -c)
  long h_plus = 0;  // cycles
};

// Class numbers of a positive non-square discriminant from rho-cycles of primitive reduced
// forms (a, b, c), 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b.
inline CycleCounts class_numbers_by_cycles(long D) {
  using F = std::tuple<long, long, long>;
  const long s = isqrt_floor(D);
  std::set<F> reduced;
  for (long b = 1; b <= s; ++b) {
    if ((b * b - D) % 4 != 0) continue;
    const long n = (b * b - D) / 4;  // a c, negative
    for (long m = 1; m <= -n; ++m) {
      if ((-n) % m != 0) continue;
      for (long a : {m, -m}) {
        const long c = n / a;
        const long two_a = 2 * std::labs(a);
        if ((two_a + b) * (two_a + b) <= D) continue;
        if (two_a - b > 0 && (two_a - b) * (two_a - b) >= D) continue;
        if (std::gcd(std::gcd(std::labs(a), b), std::labs(c)) != 1) continue;
        reduced.insert({a, b, c});
      }
    }
  }
  auto rho = [&](const F& f) {
    const auto [a, b, c] = f;
    const long m = 2 * std::labs(c);
    const long nb = s - (((s + b) % m) + m) % m;
    return F{c, nb, (nb * nb - D) / (4 * c)};
  };
  std::map<F, long> cycle_id;
  CycleCounts out;
  for (const F& f : reduced) {
    if (cycle_id.count(f)) continue;
    F g = f;
    do {
      cycle_id[g] = out.h_plus;
      g = rho(g);
    } while (g != f && reduced.count(g));
    ++out.h_plus;
  }
  std::set<std::pair<long, long>> pairs;
  for (const auto& [f, id] : cycle_id) {
    const auto [a, b, c] = f;
    const long other = cycle_id.at(F{-a, b, -c});
    pairs.insert({std::min(id, other), std::max(id, other)});
  }
  out.h = static_cast<long>(pairs.size());
  return out;
}

inline long narrow_class_number_by_cycles(long D) { return class_numbers_by_cycles(D).h_plus; }

// h log(eps) = -(1/2) sum_{0 < a < D} chi(a) log sin(pi a / D) for a real field of discriminant D.
template <class Kronecker>
long analytic_real_class_number(long D, double log_eps, Kronecker chi) {
  double sum = 0;
  for (long a = 1; a < D; ++a) sum += chi(D, a) * std::log(std::sin(M_PI * double(a) / double(D)));
  return std::lround(-0.5 * sum / log_eps);
}

inline bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

}  // namespace freyforge::testing
