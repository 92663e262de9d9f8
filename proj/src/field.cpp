#include "freyforge/field.hpp"

#include "freyforge/error.hpp"

#include <algorithm>
#include <sstream>

namespace freyforge {

QuadraticField QuadraticField::make(std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "d must be nonzero");
  if (d == 1) return QuadraticField(1, 1, BasisKind::Sqrt);
  Integer square;
  if (!is_squarefree(Integer(static_cast<long>(d)), &square)) {
    throw Error(ErrorCode::NotSquarefree,
                "d must be squarefree (" + square.get_str() + " divides " + std::to_string(d) + ")");
  }
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return QuadraticField(d, d, BasisKind::Half);
  return QuadraticField(d, 4 * d, BasisKind::Sqrt);
}

std::string QuadraticField::name() const {
  if (d_ == 1) return "Q";
  return "Q(sqrt(" + std::to_string(d_) + "))";
}

FieldElement::FieldElement(QuadraticField field, Rational x, Rational y)
    : field_(field), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  if (field_.degree() == 1 && y_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "elements of Q have no w-coordinate");
  }
}

void FieldElement::require_same(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorCode::FieldMismatch,
                "elements of " + field_.name() + " and " + o.field_.name() + " mixed");
  }
}

Rational FieldElement::norm() const {
  if (field_.degree() == 1) return x_;
  // (x + y w)(x + y w') = x^2 + t x y - n y^2
  return x_ * x_ + field_.w_trace() * x_ * y_ - Rational(static_cast<long>(field_.w_square_const())) * y_ * y_;
}

Rational FieldElement::trace() const {
  if (field_.degree() == 1) return x_;
  return 2 * x_ + field_.w_trace() * y_;
}

FieldElement FieldElement::conjugate() const {
  if (field_.degree() == 1) return *this;
  // w' = t - w
  return {field_, x_ + field_.w_trace() * y_, -y_};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero in " + field_.name());
  if (field_.degree() == 1) return {field_, 1 / x_};
  const Rational n = norm();
  const FieldElement c = conjugate();
  return {field_, c.x_ / n, c.y_ / n};
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same(o);
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same(o);
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same(o);
  const Rational yy = y_ * o.y_;
  const Rational nx = x_ * o.x_ + Rational(static_cast<long>(field_.w_square_const())) * yy;
  const Rational ny = x_ * o.y_ + y_ * o.x_ + field_.w_trace() * yy;
  x_ = nx;
  y_ = ny;
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result(field_, 1);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::pair<Rational, Rational> FieldElement::sqrt_coords() const {
  if (field_.basis_kind() == BasisKind::Half) {
    // x + y (1 + sqrt d)/2
    return {x_ + y_ / 2, y_ / 2};
  }
  return {x_, y_};
}

FieldElement FieldElement::from_sqrt_coords(QuadraticField field, const Rational& s, const Rational& t) {
  if (field.basis_kind() == BasisKind::Half) {
    // s + t sqrt d = (s - t) + 2t w
    return {field, s - t, 2 * t};
  }
  return {field, s, t};
}

Integer FieldElement::height() const {
  Integer hx = abs(x_.get_num());
  Integer hy = abs(y_.get_num());
  return hx > hy ? hx : hy;
}

std::string FieldElement::to_string() const {
  if (field_.degree() == 1 || y_ == 0) return x_.get_str();
  return x_.get_str() + "," + y_.get_str();
}

FieldElement FieldElement::parse(QuadraticField field, const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {field, Rational(text)};
    return {field, Rational(text.substr(0, comma)), Rational(text.substr(comma + 1))};
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse field element '" + text + "'");
  }
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& e) {
  const QuadraticField& field = e.field();
  if (e.is_zero()) return e;
  if (field.degree() == 1) {
    auto r = exact_sqrt(e.x());
    if (!r) return std::nullopt;
    return FieldElement(field, *r);
  }
  // (u + v sqrt d)^2 = s + t sqrt d  =>  u^2 + d v^2 = s, u^2 - d v^2 = +-sqrt(N(e))
  const auto [s, t] = e.sqrt_coords();
  auto n = exact_sqrt(e.norm());
  if (!n) return std::nullopt;
  const Rational d(static_cast<long>(field.d()));
  for (int sign : {1, -1}) {
    const Rational u2 = (s + sign * *n) / 2;
    const Rational v2 = (s - sign * *n) / (2 * d);
    auto u = exact_sqrt(u2);
    auto v = exact_sqrt(v2);
    if (!u || !v) continue;
    for (int su : {1, -1}) {
      for (int sv : {1, -1}) {
        const Rational uu = su * *u;
        const Rational vv = sv * *v;
        if (2 * uu * vv == t) {
          FieldElement root = FieldElement::from_sqrt_coords(field, uu, vv);
          if (root * root == e) return root;
        }
      }
    }
  }
  return std::nullopt;
}

const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "unknown";
}

std::string PrimeIdealAbove::to_string() const {
  if (field().degree() == 1 || splitting == Splitting::Inert) return "(" + rational_prime.get_str() + ")";
  return "(" + rational_prime.get_str() + ", " + pi.to_string() + ")";
}

Splitting splitting_of(const QuadraticField& field, const Integer& p) {
  if (field.degree() == 1) return Splitting::Split;  // unused for Q; see split_prime
  const Integer disc(static_cast<long>(field.disc()));
  if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) return Splitting::Ramified;
  if (p == 2) {
    const std::int64_t r = ((field.d() % 8) + 8) % 8;
    return r == 1 ? Splitting::Split : Splitting::Inert;
  }
  return mpz_kronecker(disc.get_mpz_t(), p.get_mpz_t()) == 1 ? Splitting::Split : Splitting::Inert;
}

namespace {

// Roots of the minimal polynomial X^2 - tX - n of w modulo p.
std::vector<Integer> w_roots_mod(const QuadraticField& field, const Integer& p) {
  const Integer t = static_cast<long>(field.w_trace());
  const Integer n = static_cast<long>(field.w_square_const());
  std::vector<Integer> roots;
  if (p == 2) {
    for (long r = 0; r < 2; ++r) {
      Integer v = Integer(r) * r - t * r - n;
      if (mpz_divisible_ui_p(v.get_mpz_t(), 2)) roots.emplace_back(r);
    }
    return roots;
  }
  // r = (t +- sqrt(t^2 + 4n)) / 2 mod p
  auto s = sqrt_mod(t * t + 4 * n, p);
  if (!s) return roots;
  Integer inv2 = (p + 1) / 2;
  for (const Integer& sq : {Integer(*s), Integer(p - *s)}) {
    Integer r = ((t + sq) * inv2) % p;
    if (r < 0) r += p;
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<PrimeIdealAbove> split_prime(const QuadraticField& field, const Integer& p) {
  if (!is_probable_prime(p)) throw Error(ErrorCode::NotPrime, p.get_str() + " is not prime");
  if (field.degree() == 1) {
    PrimeIdealAbove prime{p, FieldElement(field, Rational(p)), 1, 1, Splitting::Inert, Integer(0)};
    return {prime};
  }
  const Splitting kind = splitting_of(field, p);
  if (kind == Splitting::Inert) {
    return {PrimeIdealAbove{p, FieldElement(field, Rational(p)), 1, 2, Splitting::Inert, Integer(0)}};
  }
  std::vector<Integer> roots = w_roots_mod(field, p);
  std::vector<PrimeIdealAbove> out;
  for (const Integer& r : roots) {
    FieldElement pi(field, Rational(-r), Rational(1));
    // make pi a uniformizer: N(w - r - p) = f(r) + p f'(r) + p^2 and p does not divide f'(r) when split
    if (kind == Splitting::Split && mpz_divisible_p(pi.norm().get_num().get_mpz_t(), Integer(p * p).get_mpz_t())) {
      pi = FieldElement(field, Rational(-(r + p)), Rational(1));
    }
    out.push_back(PrimeIdealAbove{p, pi, kind == Splitting::Ramified ? 2 : 1, 1, kind, r});
  }
  if ((kind == Splitting::Ramified && out.size() != 1) || (kind == Splitting::Split && out.size() != 2)) {
    throw std::logic_error("inconsistent splitting for " + p.get_str() + " in " + field.name());
  }
  return out;
}

Integer ideal_norm(const PrimeIdealAbove& prime) { return pow(prime.rational_prime, prime.f); }

Valuation valuation(const FieldElement& e, const PrimeIdealAbove& prime) {
  if (!(e.field() == prime.field())) {
    throw Error(ErrorCode::FieldMismatch, "valuation: element and prime live in different fields");
  }
  if (e.is_zero()) return std::nullopt;
  const Integer& p = prime.rational_prime;
  if (e.field().degree() == 1) return valuation_p(e.x(), p);
  switch (prime.splitting) {
    case Splitting::Ramified:
      return valuation_p(e.norm(), p);
    case Splitting::Inert:
      return *valuation_p(e.norm(), p) / 2;
    case Splitting::Split: {
      // Strip the largest power of p dividing both coordinates, then at most one prime above p remains.
      const Valuation vx = valuation_p(e.x(), p);
      const Valuation vy = valuation_p(e.y(), p);
      long g = 0;
      if (!vx) g = *vy;
      else if (!vy) g = *vx;
      else g = std::min(*vx, *vy);
      Rational scale = g >= 0 ? Rational(1, pow(p, g)) : Rational(pow(p, -g));
      FieldElement unit_part = e.scaled(scale);
      Integer residue = (reduce_mod(unit_part.x(), p) + reduce_mod(unit_part.y(), p) * prime.residue) % p;
      if (residue != 0) return g;
      return g + *valuation_p(unit_part.norm(), p);
    }
  }
  return std::nullopt;
}

bool coprime(const FieldElement& x, const FieldElement& y) {
  if (x.is_zero() && y.is_zero()) return false;
  const Integer nx = abs(x.norm().get_num());
  const Integer ny = abs(y.norm().get_num());
  Integer g;
  mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
  if (g == 1) return true;
  if (x.field().degree() == 1) return false;
  for (const auto& [q, _] : factor(g)) {
    for (const PrimeIdealAbove& prime : split_prime(x.field(), q)) {
      const Valuation vx = valuation(x, prime);
      const Valuation vy = valuation(y, prime);
      if ((!vx || *vx > 0) && (!vy || *vy > 0)) return false;
    }
  }
  return true;
}

}  // namespace freyforge
