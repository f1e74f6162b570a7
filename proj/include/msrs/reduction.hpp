// Template reductions: the diagonal point (q,...,q) and the points with p
// repeated i times and q repeated n-i times, with their eigenvalue
// expressions.
#pragma once

#include <vector>

#include "msrs/core.hpp"
#include "msrs/model.hpp"

namespace msrs {

// F, G1, G2 in (sigma, q). Eigenvalues: G1 with multiplicity n-1, G2 once.
struct ReducedDiagonal {
  RatFunc F, G1, G2;
};

// F1 = f_1, F2 = f_n at the template point, in (sigma, p, q). Eigenvalues:
// G1 (n-i-1 times), G2 (i-1 times), roots of lambda^2 - G3 lambda + G4.
struct ReducedNonDiagonal {
  int i = 1;
  RatFunc F1, F2, G1, G2, G3, G4;
  const RatFunc& G(int k) const;
};

ReducedDiagonal diagonal_equilibrium(const MSRSModel& m);
ReducedNonDiagonal nondiagonal_equilibrium(const MSRSModel& m, int i);

struct ClearedFraction {
  MPoly num, den;
  bool den_positive = false;
};
// Integer num and den with num/den = rf.
ClearedFraction clear_denominators(const RatFunc& rf);

// (p - q) * difference_poly = num1 * den2 - num2 * den1.
MPoly difference_poly(const RatFunc& F1, const RatFunc& F2);

// Required sign of G_k at a stable template point. Template 0 is diagonal.
struct SignCondition {
  int k;
  int sign;
};
std::vector<SignCondition> stability_conditions(int n, int i);

}  // namespace msrs
