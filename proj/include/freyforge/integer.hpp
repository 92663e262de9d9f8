#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace freyforge {

using Integer = mpz_class;
using Rational = mpq_class;

// A p-adic or P-adic valuation; std::nullopt stands for +infinity (valuation of zero).
using Valuation = std::optional<long>;

inline bool is_infinite(const Valuation& v) { return !v.has_value(); }

// v_p(n) for a nonzero integer; nullopt for n == 0.
Valuation valuation_p(const Integer& n, const Integer& p);
Valuation valuation_p(const Rational& q, const Integer& p);

bool is_probable_prime(const Integer& n);

// Prime factorization of |n| (n != 0), ascending primes.
std::vector<std::pair<Integer, long>> factor(const Integer& n);

// Exact roots: return the root when n is a perfect k-th power (sign allowed for odd k).
std::optional<Integer> exact_root(const Integer& n, unsigned long k);
std::optional<Rational> exact_sqrt(const Rational& q);

bool is_squarefree(const Integer& n, Integer* square_factor = nullptr);

// Modular square root for an odd prime p; nullopt when a is a non-residue.
std::optional<Integer> sqrt_mod(const Integer& a, const Integer& p);

// Reduces a p-integral rational modulo p.
Integer reduce_mod(const Rational& q, const Integer& p);

Integer pow(const Integer& base, unsigned long exp);

}  // namespace freyforge
