#pragma once

#include "freyforge/frey.hpp"
#include "freyforge/hypotheses.hpp"
#include "freyforge/local.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freyforge {

struct SearchSpec {
  QuadraticField field;
  long p = 5;
  long height = 1;  // bound on |coordinate| of a and b in the integral basis
  std::optional<PrimeIdealAbove> require_P_divides_c;
  Limits limits;

  // InvalidArgument / NotPrime for a malformed spec, ResourceLimit past max_p or max_search_steps.
  void validate() const;
};

// Representative with the leading nonzero coordinate of a and of b positive.
Solution canonical_form(const Solution& s);
bool solution_less(const Solution& l, const Solution& r);

std::vector<Solution> enumerate_solutions_serial(const SearchSpec& spec);
// Rows of a are shared out to OpenMP workers; output is sorted and independent of jobs.
std::vector<Solution> enumerate_solutions(const SearchSpec& spec, int jobs = 0);

struct AuditSkip {
  std::string stage;
  std::string reason;
};

struct AuditReport {
  Solution solution;
  Classification classification;
  std::vector<PrimeIdealAbove> primes_dividing_c;  // from S_K
  std::optional<PrimeIdealAbove> prime;            // the P used for the local stages
  std::optional<Solution> normalized;
  std::optional<ValuationProfile> profile;
  std::optional<FreyCurve> curve;
  std::optional<ConductorData> conductor;
  std::optional<MultiplicativeCheck> multiplicative;
  std::vector<AuditSkip> skips;
  bool field_h1 = false;
  H2Status field_h2 = H2Status::Unknown;
  std::string note;
};

struct AuditOptions {
  std::optional<long> tk_bound;  // run the T_K falsifier for the H2 status
  int jobs = 0;
  Limits limits;
  std::optional<ClassData> class_data;  // reuse instead of recomputing
};

// NotASolution when s does not satisfy the equation.
AuditReport audit_solution(const Solution& s, const AuditOptions& options = {});

// Primitive solutions with P | c over each field: a search at the smallest exponent with
// p > 2 v_P(2), widened by unit twists (eps^p a, eps^2p b, eps^4 c) in real fields, until
// per_field entries are collected or max_height is reached.
struct CorpusEntry {
  Solution solution;
  PrimeIdealAbove prime;
};

std::vector<CorpusEntry> valuation_corpus(const std::vector<long>& ds, std::size_t per_field, long max_height,
                                          int jobs = 0);

}  // namespace freyforge
