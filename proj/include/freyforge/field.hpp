#pragma once

#include "freyforge/integer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace freyforge {

// Integral basis {1, w}: w = (1 + sqrt(d))/2 when d = 1 mod 4, otherwise w = sqrt(d).
enum class BasisKind { Sqrt, Half };

// Q(sqrt(d)) for squarefree d; d == 1 encodes Q itself (degree 1).
class QuadraticField {
 public:
  QuadraticField() : d_(1), disc_(1), kind_(BasisKind::Sqrt) {}
  static QuadraticField make(std::int64_t d);
  static QuadraticField rationals() { return make(1); }

  std::int64_t d() const { return d_; }
  std::int64_t disc() const { return disc_; }
  BasisKind basis_kind() const { return kind_; }
  int degree() const { return d_ == 1 ? 1 : 2; }
  bool is_rational() const { return d_ == 1; }
  bool is_real() const { return d_ > 1; }
  bool is_imaginary() const { return d_ < 0; }

  // w^2 = trace_w * w + norm_const
  std::int64_t w_trace() const { return kind_ == BasisKind::Half ? 1 : 0; }
  std::int64_t w_square_const() const { return kind_ == BasisKind::Half ? (d_ - 1) / 4 : d_; }

  std::string name() const;

  friend bool operator==(const QuadraticField&, const QuadraticField&) = default;

 private:
  QuadraticField(std::int64_t d, std::int64_t disc, BasisKind kind)
      : d_(d), disc_(disc), kind_(kind) {}

  std::int64_t d_;
  std::int64_t disc_;
  BasisKind kind_;
};

// x + y*w with exact rational coordinates.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(QuadraticField field) : field_(field) {}
  FieldElement(QuadraticField field, Rational x, Rational y = 0);

  static FieldElement from_int(QuadraticField field, long n) { return {field, Rational(n)}; }

  const QuadraticField& field() const { return field_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_integral() const { return x_.get_den() == 1 && y_.get_den() == 1; }
  bool is_rational() const { return y_ == 0; }

  Rational norm() const;
  Rational trace() const;
  FieldElement conjugate() const;
  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement operator-() const { return {field_, -x_, -y_}; }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  FieldElement pow(long e) const;
  FieldElement scaled(const Rational& r) const { return {field_, x_ * r, y_ * r}; }

  // Coordinates in {1, sqrt(d)}: returns (s, t) with element = s + t*sqrt(d).
  std::pair<Rational, Rational> sqrt_coords() const;
  static FieldElement from_sqrt_coords(QuadraticField field, const Rational& s, const Rational& t);

  // Height: max |coordinate numerator| over the integral basis (integral elements).
  Integer height() const;

  // "x" or "x,y" for integral coordinates, "x/den,y/den" otherwise.
  std::string to_string() const;
  static FieldElement parse(QuadraticField field, const std::string& text);

 private:
  void require_same(const FieldElement& o) const;

  QuadraticField field_;
  Rational x_;
  Rational y_;
};

// Square root in K, if the element is a square.
std::optional<FieldElement> sqrt_in_field(const FieldElement& e);

enum class Splitting { Split, Inert, Ramified };
const char* to_string(Splitting s);

// A prime of O_K above a rational prime, with the two-element representation (p, pi).
struct PrimeIdealAbove {
  Integer rational_prime;
  FieldElement pi;
  int e = 1;
  int f = 1;
  Splitting splitting = Splitting::Inert;
  // For split/ramified primes: the residue r with P = (p, w - r); w maps to r in O_K/P.
  Integer residue;
  QuadraticField field() const { return pi.field(); }

  std::string to_string() const;

  friend bool operator==(const PrimeIdealAbove& a, const PrimeIdealAbove& b) {
    return a.rational_prime == b.rational_prime && a.pi == b.pi;
  }
};

Splitting splitting_of(const QuadraticField& field, const Integer& p);

// All primes above p, ordered by residue. Throws NotPrime for composite p.
std::vector<PrimeIdealAbove> split_prime(const QuadraticField& field, const Integer& p);

// Primes above 2.
inline std::vector<PrimeIdealAbove> s_k(const QuadraticField& field) { return split_prime(field, 2); }

// v_P(e); std::nullopt for e == 0.
Valuation valuation(const FieldElement& e, const PrimeIdealAbove& prime);

// Norm of the prime ideal (p^f).
Integer ideal_norm(const PrimeIdealAbove& prime);

// Whether x and y generate the unit ideal in O_K (both integral).
bool coprime(const FieldElement& x, const FieldElement& y);

}  // namespace freyforge
