#pragma once

#include "freyforge/integer.hpp"

#include <compare>
#include <vector>

namespace freyforge {

// Binary quadratic form a x^2 + b xy + c y^2 with discriminant b^2 - 4ac.
struct Form {
  Integer a, b, c;

  Integer discriminant() const { return b * b - 4 * a * c; }
  bool is_primitive() const;

  friend bool operator==(const Form&, const Form&) = default;
  friend auto operator<=>(const Form& l, const Form& r) {
    if (auto o = cmp(l.a, r.a); o != 0) return o <=> 0;
    if (auto o = cmp(l.b, r.b); o != 0) return o <=> 0;
    return cmp(l.c, r.c) <=> 0;
  }
};

// Principal form of discriminant D.
Form principal_form(const Integer& disc);

// Definite: |b| <= a <= c with b >= 0 on the boundary. Indefinite: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced(const Form& f);

// Reduces to a reduced form in the same SL2(Z) class (indefinite: some form of the cycle).
Form reduce(Form f);

// Indefinite reduction step rho; maps a reduced form to the next form of its cycle.
Form rho(const Form& f);

// Dirichlet composition followed by reduction.
Form compose(const Form& f, const Form& g);

// The full cycle of a reduced indefinite form, starting at f.
std::vector<Form> cycle_of(const Form& f);

enum class FormOrder { Ascending, Descending };

// All primitive reduced forms of discriminant D.
std::vector<Form> reduced_forms(const Integer& disc, FormOrder order = FormOrder::Ascending);

// Cycles of reduced indefinite forms (each cycle sorted by its own traversal, list sorted by minimum).
std::vector<std::vector<Form>> form_cycles(const Integer& disc, FormOrder order = FormOrder::Ascending);

// Whether the form lies in the principal class of the wide class group
// (definite: equivalent to the principal form; indefinite: its cycle holds a form with |a| = 1).
bool is_wide_principal(const Form& f);

// Order of the form's class in the wide class group Cl(K); throws ResourceLimit after max_order steps.
long wide_class_order(const Form& f, long max_order = 1000000);

}  // namespace freyforge
