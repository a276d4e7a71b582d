// Dense univariate polynomial helpers over a coefficient field.
#pragma once

#include <cstddef>
#include <vector>

#include "pfaff/field.hpp"

namespace pfaff {

// Coefficient vectors store the leading term first; the zero polynomial is {}.
using Poly = std::vector<FieldElement>;

Poly poly_mul(const Poly& a, const Poly& b, const Field& F);
Poly poly_pow(const Poly& a, std::size_t e, const Field& F);
Poly poly_add(const Poly& a, const Poly& b, const Field& F);
Poly poly_scale(const FieldElement& c, const Poly& a);
FieldElement poly_eval(const Poly& p, const FieldElement& x);
bool poly_eq(const Poly& a, const Poly& b);
std::string poly_str(const Poly& p, const std::string& var = "X");

// Monic m-th root of a monic polynomial: r with r^m = p.  Characteristic 2
// reads coefficients off directly (m must be 2 or 4 there); otherwise a
// triangular recurrence dividing by m.  Throws validation_error when p is not
// a perfect m-th power.
Poly poly_monic_root(const Poly& p, std::size_t m, const Field& F);

} // namespace pfaff
