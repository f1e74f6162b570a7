// Real root isolation and refinement over Q, sample points between roots.
#pragma once

#include <vector>

#include "msrs/core.hpp"
#include "msrs/upoly.hpp"

namespace msrs {

// Exactly one real root of the owning polynomial lies in [lo, hi]. When
// lo < hi the root is interior and the polynomial is nonzero at both ends.
struct IsolatingInterval {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

// Positive real roots of the squarefree part, increasing.
std::vector<IsolatingInterval> isolate_positive_roots(const ZPoly& f);
std::vector<IsolatingInterval> isolate_positive_roots(const MPoly& f, Var v);

// f must be squarefree with I isolating one of its roots.
IsolatingInterval refine_root(const ZPoly& f, IsolatingInterval I, const Rat& width);
IsolatingInterval refine_root(const MPoly& f, Var v, const IsolatingInterval& I, const Rat& width);
// One bisection step; returns false if I is already exact.
bool bisect_root(const ZPoly& f, IsolatingInterval& I);

// A root shared by several pairwise coprime squarefree factors: which factor
// owns each interval.
struct OwnedInterval {
  IsolatingInterval iv;
  size_t factor;
};
// Positive roots of the product of pairwise coprime squarefree factors,
// refined until disjoint, increasing.
std::vector<OwnedInterval> isolate_positive_roots(const std::vector<ZPoly>& factors);

// Simplest rational strictly between a and b (0 <= a < b).
Rat simplest_between(const Rat& a, const Rat& b);
// Simplest rational in the closed interval [a, b].
Rat simplest_in(const Rat& a, const Rat& b);
// One rational inside each open gap of (0, inf) minus the intervals.
std::vector<Rat> sample_between(const std::vector<IsolatingInterval>& intervals);

// True when a modular test proves f has no rational root.
bool no_rational_roots_mod_small_primes(const ZPoly& f);

Rat floor_rat(const Rat& x);
Rat ceil_rat(const Rat& x);
std::string decimal(const Rat& x, int digits);

}  // namespace msrs
