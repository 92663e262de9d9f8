#include "freyforge/units.hpp"

#include "freyforge/error.hpp"

#include <algorithm>

namespace freyforge {

bool element_less(const FieldElement& l, const FieldElement& r) {
  if (l.x() != r.x()) return l.x() < r.x();
  return l.y() < r.y();
}

namespace {

void sort_unique(std::vector<FieldElement>& v) {
  std::sort(v.begin(), v.end(), element_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

UnitContext::UnitContext(QuadraticField field, Limits limits) : field_(field), limits_(limits) {
  const FieldElement one(field_, 1);
  torsion_ = {one, -one};
  if (field_.d() == -1) {
    const FieldElement i(field_, 0, 1);
    torsion_.push_back(i);
    torsion_.push_back(-i);
  } else if (field_.d() == -3) {
    const FieldElement w(field_, 0, 1);
    const FieldElement w2 = w * w;
    for (const FieldElement& z : {w, -w, w2, -w2}) torsion_.push_back(z);
  }
  sort_unique(torsion_);
  if (field_.is_real()) {
    unit_ = freyforge::fundamental_unit(field_);
    // eps = s + t sqrt d <= |s| + |t| (floor(sqrt d) + 1), rounded up
    const auto [s, t] = unit_->sqrt_coords();
    const Integer root = isqrt(Integer(static_cast<long>(field_.d()))) + 1;
    Rational bound = abs(s) + abs(t) * root;
    unit_size_bound_ = bound.get_num() / bound.get_den() + 1;
  } else {
    unit_size_bound_ = 1;
  }
}

std::vector<FieldElement> UnitContext::elements_of_norm(const Integer& m_in) const {
  const Integer m = abs(m_in);
  std::vector<FieldElement> out;
  if (m == 0) return out;
  if (field_.degree() == 1) {
    out.emplace_back(field_, Rational(m));
    out.emplace_back(field_, Rational(-m));
    return out;
  }
  const Integer d = static_cast<long>(field_.d());
  const Integer abs_d = abs(d);
  // alpha = (u + v sqrt d)/2, N(alpha) = (u^2 - d v^2)/4
  Integer v_max;
  if (field_.is_imaginary()) {
    v_max = isqrt(4 * m / abs_d);
  } else {
    const Integer e1 = unit_size_bound_ + 1;
    v_max = isqrt(e1 * e1 * m / abs_d) + 1;
  }
  if (v_max > limits_.max_search_steps) {
    throw Error(ErrorCode::ResourceLimit, "norm equation search box too large (" + v_max.get_str() + ")");
  }
  const bool half = field_.basis_kind() == BasisKind::Half;
  const long vmax = v_max.get_si();
  for (long step = 0; step <= 2 * vmax; ++step) {
    const long v = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    if (!half && v % 2 != 0) continue;
    for (int sign : {1, -1}) {
      if (field_.is_imaginary() && sign < 0) continue;
      const Integer u2 = d * v * v + 4 * sign * m;
      if (u2 < 0) continue;
      auto u = exact_root(u2, 2);
      if (!u) continue;
      std::vector<Integer> candidates{*u};
      if (*u != 0) candidates.push_back(-*u);
      for (const Integer& uu : candidates) {
        const bool u_odd = mpz_odd_p(uu.get_mpz_t()) != 0;
        if (half ? (u_odd != (v % 2 != 0)) : u_odd) continue;
        out.push_back(FieldElement::from_sqrt_coords(field_, Rational(uu, 2), Rational(v, 2)));
      }
    }
  }
  return out;
}

std::optional<std::pair<long, int>> UnitContext::unit_log(const FieldElement& q, long step) const {
  const FieldElement one(field_, 1);
  if (q == one) return std::pair<long, int>{0, 1};
  if (q == -one) return std::pair<long, int>{0, -1};
  if (!unit_ || !q.is_integral()) return std::nullopt;
  const Rational n = q.norm();
  if (n != 1 && n != -1) return std::nullopt;
  const FieldElement base = unit_->pow(step);
  const FieldElement base_inv = base.inverse();
  const Integer h = q.height();
  FieldElement up = base, down = base_inv;
  for (long k = 1;; ++k) {
    if (up == q) return std::pair<long, int>{k, 1};
    if (up == -q) return std::pair<long, int>{k, -1};
    if (down == q) return std::pair<long, int>{-k, 1};
    if (down == -q) return std::pair<long, int>{-k, -1};
    if (up.height() > h && down.height() > h) return std::nullopt;
    up *= base;
    down *= base_inv;
  }
}

std::vector<FieldElement> UnitContext::pth_roots(const FieldElement& n, long p) const {
  std::vector<FieldElement> out;
  if (n.is_zero()) {
    out.emplace_back(field_);
    return out;
  }
  if (!n.is_integral()) return out;
  if (field_.degree() == 1) {
    if (auto r = exact_root(n.x().get_num(), static_cast<unsigned long>(p))) out.emplace_back(field_, Rational(*r));
    return out;
  }
  auto m = exact_root(n.norm().get_num(), static_cast<unsigned long>(p));
  if (!m) return out;
  for (const FieldElement& alpha : elements_of_norm(*m)) {
    if (alpha.norm() != *m) continue;
    const FieldElement ap = alpha.pow(p);
    if (ap == n) {
      out.push_back(alpha);
      continue;
    }
    if (!field_.is_real()) continue;
    // c = +-alpha eps^k  <=>  n / alpha^p = +-eps^(p k)
    if (auto log = unit_log(n / ap, p)) {
      FieldElement c = alpha * unit_->pow(log->first);
      if (log->second < 0) c = -c;
      if (c.pow(p) == n) out.push_back(c);
    }
  }
  sort_unique(out);
  return out;
}

std::optional<FieldElement> principal_generator(const UnitContext& ctx, const IdealFactorization& ideal) {
  Integer norm = 1;
  for (const auto& [prime, n] : ideal) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "principal_generator expects an integral ideal");
    norm *= pow(ideal_norm(prime), static_cast<unsigned long>(n));
  }
  for (const FieldElement& alpha : ctx.elements_of_norm(norm)) {
    bool match = true;
    for (const auto& [prime, n] : ideal) {
      const Valuation v = valuation(alpha, prime);
      if (!v || *v != n) {
        match = false;
        break;
      }
    }
    if (match) return alpha;
  }
  return std::nullopt;
}

namespace {

Form form_power(const Form& f, long n) {
  Form result = principal_form(f.discriminant());
  for (long i = 0; i < n; ++i) result = compose(result, f);
  return result;
}

bool ideal_is_principal(const std::vector<PrimeIdealAbove>& primes, const std::vector<long>& exps) {
  if (primes.empty() || primes.front().field().degree() == 1) return true;
  const Integer disc = static_cast<long>(primes.front().field().disc());
  Form acc = principal_form(disc);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    acc = compose(acc, form_power(form_of_prime(primes[i]), exps[i]));
  }
  return is_wide_principal(acc);
}

// Row-style Hermite normal form of the lattice spanned by rows; returns nonzero rows.
std::vector<std::vector<long>> hermite_basis(std::vector<std::vector<long>> rows, std::size_t dim) {
  std::vector<std::vector<long>> basis;
  for (std::size_t col = 0; col < dim; ++col) {
    for (;;) {
      std::size_t pivot = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][col] != 0 && (pivot == rows.size() || std::labs(rows[i][col]) < std::labs(rows[pivot][col]))) {
          pivot = i;
        }
      }
      if (pivot == rows.size()) break;
      bool reduced = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == pivot || rows[i][col] == 0) continue;
        const long q = rows[i][col] / rows[pivot][col];
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[pivot][j];
        if (rows[i][col] != 0) reduced = false;
      }
      if (reduced) {
        std::vector<long> row = rows[pivot];
        if (row[col] < 0) {
          for (long& x : row) x = -x;
        }
        basis.push_back(row);
        rows.erase(rows.begin() + static_cast<long>(pivot));
        break;
      }
    }
  }
  return basis;
}

}  // namespace

SUnitBasis s_unit_basis(const UnitContext& ctx, const std::vector<PrimeIdealAbove>& primes) {
  SUnitBasis out;
  out.torsion = ctx.roots_of_unity();
  out.unit = ctx.fundamental_unit();
  const std::size_t dim = primes.size();
  for (const PrimeIdealAbove& prime : primes) {
    if (!(prime.field() == ctx.field())) throw Error(ErrorCode::FieldMismatch, "S contains a prime of another field");
  }
  std::vector<long> orders;
  for (const PrimeIdealAbove& prime : primes) orders.push_back(prime_class_order(prime));

  // Relations: k_i e_i plus every principal exponent vector in the box prod [0, k_i).
  std::vector<std::vector<long>> relations;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<long> r(dim, 0);
    r[i] = orders[i];
    relations.push_back(r);
  }
  std::vector<long> exps(dim, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < dim && ++exps[i] == orders[i]) exps[i++] = 0;
    if (i == dim) break;
    if (ideal_is_principal(primes, exps)) relations.push_back(exps);
  }
  out.exponent_basis = hermite_basis(relations, dim);

  // Generator of a basis vector: shift negative exponents by k_i and divide back out.
  std::vector<std::optional<FieldElement>> order_gens(dim);
  auto gen_of_power = [&](std::size_t i) -> const FieldElement& {
    if (!order_gens[i]) {
      order_gens[i] = principal_generator(ctx, {{primes[i], orders[i]}});
      if (!order_gens[i]) throw std::logic_error("P^order is not principal");
    }
    return *order_gens[i];
  };
  for (const auto& vec : out.exponent_basis) {
    IdealFactorization ideal;
    FieldElement divisor(ctx.field(), 1);
    for (std::size_t i = 0; i < dim; ++i) {
      long n = vec[i];
      while (n < 0) {
        n += orders[i];
        divisor *= gen_of_power(i);
      }
      if (n > 0) ideal.emplace_back(primes[i], n);
    }
    auto g = principal_generator(ctx, ideal);
    if (!g) throw std::logic_error("relation vector is not principal");
    out.generators.push_back(*g / divisor);
  }
  return out;
}

std::vector<FieldElement> s_units_bounded(const UnitContext& ctx, const std::vector<PrimeIdealAbove>& primes,
                                          long bound) {
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const SUnitBasis basis = s_unit_basis(ctx, primes);
  std::vector<FieldElement> free_gens = basis.generators;
  if (basis.unit) free_gens.insert(free_gens.begin(), *basis.unit);

  std::vector<FieldElement> products{FieldElement(ctx.field(), 1)};
  for (const FieldElement& g : free_gens) {
    std::vector<FieldElement> powers;
    for (long k = -bound; k <= bound; ++k) powers.push_back(g.pow(k));
    std::vector<FieldElement> next;
    next.reserve(products.size() * powers.size());
    for (const FieldElement& p : products) {
      for (const FieldElement& q : powers) next.push_back(p * q);
    }
    products = std::move(next);
  }
  std::vector<FieldElement> out;
  out.reserve(products.size() * basis.torsion.size());
  for (const FieldElement& z : basis.torsion) {
    for (const FieldElement& p : products) out.push_back(z * p);
  }
  sort_unique(out);
  return out;
}

}  // namespace freyforge
