#pragma once

#include "freyforge/class_data.hpp"
#include "freyforge/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freyforge {

// (H1): odd narrow class number and a unique prime above 2.
struct H1Result {
  bool holds = false;
  ClassData class_data;
  std::vector<PrimeIdealAbove> s_k;
  Splitting two_splitting = Splitting::Inert;
  std::string reason;
};

H1Result check_h1(const QuadraticField& field, const Limits& limits = {});
H1Result check_h1(const QuadraticField& field, const ClassData& data);

// Cl(K) / <[P] : P in S_K> has trivial 2-torsion iff its order is odd.
struct ClS2Result {
  bool trivial = false;
  long h = 1;
  std::vector<long> prime_orders;  // order of [P] in Cl(K) for each P in S_K
  long subgroup_order = 1;
  long quotient_order = 1;
};

ClS2Result cl_sk_2torsion(const QuadraticField& field, const Limits& limits = {});
ClS2Result cl_sk_2torsion(const QuadraticField& field, const ClassData& data);

struct TkWitness {
  FieldElement alpha, beta, gamma;
  long v_ratio = 0;  // v_P(alpha / beta)
};

// Outcome of the bounded search for S_K-unit solutions of alpha + beta = gamma^2 with
// |v_P(alpha/beta)| > 6 v_P(2).
struct TkResult {
  long bound = 0;
  std::optional<TkWitness> counterexample;  // first in (alpha, beta) order
  long max_abs_v_ratio = 0;                 // over all square sums found
  long squares_found = 0;
  long pairs_checked = 0;
  long s_unit_count = 0;

  bool no_counterexample() const { return !counterexample.has_value(); }
};

// Reference implementation.
TkResult tk_falsifier_serial(const UnitContext& ctx, const PrimeIdealAbove& prime, long bound);
// OpenMP over rows of alpha; identical result for any worker count.
TkResult tk_falsifier(const UnitContext& ctx, const PrimeIdealAbove& prime, long bound, int jobs = 0);

enum class H2Status { TrueUpToBound, False, Unknown };
const char* to_string(H2Status s);

struct HypothesisReport {
  QuadraticField field;
  ClassData class_data;
  std::vector<PrimeIdealAbove> s_k;
  H1Result h1;
  ClS2Result cl_sk_2torsion;
  std::vector<std::optional<TkResult>> tk_status;  // per P in S_K; empty optionals when not run
  H2Status h2 = H2Status::Unknown;
};

// precomputed skips the class group computation (e.g. a cache hit).
HypothesisReport hypothesis_report(const QuadraticField& field, std::optional<long> tk_bound, int jobs = 0,
                                   const Limits& limits = {}, const std::optional<ClassData>& precomputed = {});

struct MocanuPrimeLaw {
  PrimeIdealAbove prime;
  Valuation v_j, v_mu_plus_1, v_mu;
  bool holds = false;
};

// For y^2 = x^3 + a x^2 + b x: mu = (a^2 - 4b)/b and j = 2^8 (mu + 1)^3 / mu = 2^8 (a^2 - 3b)^3 / (b^2 (a^2 - 4b)).
struct MocanuCheck {
  FieldElement j;
  FieldElement j_via_mu;
  FieldElement mu;
  bool identity_holds = false;
  std::vector<MocanuPrimeLaw> laws;
};

MocanuCheck mocanu_identity_check(const FieldElement& a, const FieldElement& b);

}  // namespace freyforge
