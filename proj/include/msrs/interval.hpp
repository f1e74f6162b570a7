// Closed rational intervals. All arithmetic is exact, so enclosures are
// outward by construction.
#pragma once

#include <algorithm>
#include <array>

#include "msrs/core.hpp"
#include "msrs/upoly.hpp"

namespace msrs {

struct RInterval {
  Rat lo, hi;
  RInterval() : lo(0), hi(0) {}
  RInterval(const Rat& a) : lo(a), hi(a) {}  // NOLINT
  RInterval(const Rat& a, const Rat& b) : lo(a), hi(b) {}

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  // -1, +1, or 0 when the sign is not determined.
  int sign() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
  Rat mid() const { return (lo + hi) / 2; }
  Rat width() const { return hi - lo; }
  bool inside_interior(const RInterval& o) const { return o.lo < lo && hi < o.hi; }
  bool disjoint(const RInterval& o) const { return hi < o.lo || o.hi < lo; }
};

inline RInterval operator+(const RInterval& a, const RInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline RInterval operator-(const RInterval& a, const RInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline RInterval operator-(const RInterval& a) { return {-a.hi, -a.lo}; }
inline RInterval operator*(const RInterval& a, const RInterval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
// b must exclude zero.
inline RInterval operator/(const RInterval& a, const RInterval& b) {
  if (b.contains_zero()) throw Error(ErrorCode::division_by_zero, "interval division by an interval holding 0");
  return a * RInterval(1 / b.hi, 1 / b.lo);
}
inline RInterval hull(const RInterval& a, const RInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

using RBox = std::array<RInterval, kNumVars>;

// Range enclosure of f over a box with nonnegative lower ends. Each monomial
// is monotone there, so its range is exact and the sum is an enclosure.
RInterval eval_positive(const MPoly& f, const RBox& box);

// Same for a univariate integer polynomial on [lo, hi] with lo >= 0.
RInterval eval_positive(const ZPoly& f, const RInterval& x);

}  // namespace msrs
