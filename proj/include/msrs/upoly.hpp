// Dense univariate polynomials over Z, and a generic subresultant PRS.
#pragma once

#include <utility>
#include <vector>

#include "msrs/core.hpp"

namespace msrs {

// Ascending coefficients, no trailing zeros. The zero polynomial is empty.
struct ZPoly {
  std::vector<Int> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
  ZPoly(const Int& k) {  // NOLINT
    if (k != 0) c.push_back(k);
  }
  static ZPoly x_pow(unsigned e, const Int& coef = 1);

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& lc() const { return c.back(); }
  Int coef(int k) const { return k < static_cast<int>(c.size()) && k >= 0 ? c[k] : Int(0); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const Int& k);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c == b.c; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return a.c != b.c; }
};

ZPoly pow(const ZPoly& a, unsigned e);
Int content(const ZPoly& a);
// Divides by the content and makes the leading coefficient positive.
ZPoly primitive(const ZPoly& a);
ZPoly divexact(const ZPoly& a, const Int& k);
// Exact polynomial division; throws NotDivisible.
ZPoly divexact(const ZPoly& a, const ZPoly& b);
bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr);
ZPoly prem(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& a);
ZPoly gcd(const ZPoly& a, const ZPoly& b);  // primitive, positive lc
ZPoly squarefree(const ZPoly& a);           // primitive, positive lc
// a = c * prod f_k^k with f_k squarefree, pairwise coprime; pairs (f_k, k).
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a);
Int resultant(const ZPoly& a, const ZPoly& b);
Rat eval(const ZPoly& a, const Rat& x);
int sign_at(const ZPoly& a, const Rat& x);
double eval_double(const ZPoly& a, double x);
// a(x + 1)
ZPoly taylor_shift1(const ZPoly& a);
// x^deg * a(1/x)
ZPoly reverse(const ZPoly& a);
// 2^(k*deg) a(x / 2^k) for k >= 0, or a(x * 2^-k) for k < 0 (exact either way)
ZPoly scale_pow2(const ZPoly& a, long k);
// Number of sign variations of the coefficient sequence.
int sign_variations(const ZPoly& a);
// Largest power of x dividing a.
int x_valuation(const ZPoly& a);
ZPoly shift_down(const ZPoly& a, int k);  // a / x^k
// Cauchy bound 1 + max|a_i / a_n| rounded up to a power of two, as exponent.
long cauchy_bound_log2(const ZPoly& a);

ZPoly zpoly_from_rats(const std::vector<Rat>& ascending);  // primitive
ZPoly zpoly_from_mpoly(const MPoly& f, Var v);             // primitive
MPoly to_mpoly(const ZPoly& a, Var v);
std::string str(const ZPoly& a, const char* var = "x");

// Generic ring hooks for the subresultant template.
template <class R>
struct RingOps;

template <>
struct RingOps<Int> {
  static bool is_zero(const Int& a) { return a == 0; }
  static Int one() { return 1; }
  static Int divexact(const Int& a, const Int& b) {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
};

template <>
struct RingOps<ZPoly> {
  static bool is_zero(const ZPoly& a) { return a.is_zero(); }
  static ZPoly one() { return ZPoly(Int(1)); }
  static ZPoly divexact(const ZPoly& a, const ZPoly& b) {
    if (b.deg() == 0) return msrs::divexact(a, b.c[0]);
    return msrs::divexact(a, b);
  }
};

template <>
struct RingOps<MPoly> {
  static bool is_zero(const MPoly& a) { return a.is_zero(); }
  static MPoly one() { return MPoly(1); }
  static MPoly divexact(const MPoly& a, const MPoly& b) { return exact_div(a, b); }
};

// Polynomials in a main variable with coefficients in R, ascending, trimmed.
template <class R>
using RPoly = std::vector<R>;

template <class R>
int rdeg(const RPoly<R>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class R>
void rtrim(RPoly<R>& a) {
  while (!a.empty() && RingOps<R>::is_zero(a.back())) a.pop_back();
}

template <class R>
R rpow(const R& a, unsigned e) {
  R r = RingOps<R>::one();
  R b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// lc(b)^(deg a - deg b + 1) a = Q b + R
template <class R>
RPoly<R> rprem(RPoly<R> a, const RPoly<R>& b) {
  int db = rdeg(b);
  int da = rdeg(a);
  if (da < db) return a;
  const R& lb = b.back();
  for (int k = da; k >= db; --k) {
    R t = a[k];
    a[k] = R();
    for (int j = 0; j < k; ++j)
      if (!RingOps<R>::is_zero(a[j])) a[j] = a[j] * lb;
    if (!RingOps<R>::is_zero(t))
      for (int j = 0; j < db; ++j)
        if (!RingOps<R>::is_zero(b[j])) a[j + k - db] = a[j + k - db] - t * b[j];
  }
  a.resize(db);
  rtrim(a);
  return a;
}

template <class R>
struct SubresultantChain {
  R res;
  // Polynomial remainder sequence as computed; element k (k >= 2) is a
  // nonzero ring multiple of a subresultant of the inputs.
  std::vector<RPoly<R>> prs;
};

// Subresultant PRS (Brown-Collins). res is the Sylvester determinant with
// the rows of a first.
template <class R>
SubresultantChain<R> subresultant_chain(RPoly<R> a, RPoly<R> b, bool keep_prs = false) {
  using O = RingOps<R>;
  SubresultantChain<R> out;
  rtrim(a);
  rtrim(b);
  if (a.empty() || b.empty()) {
    out.res = R();
    return out;
  }
  bool negate = false;
  if (rdeg(a) < rdeg(b)) {
    std::swap(a, b);
    if ((rdeg(a) & 1) && (rdeg(b) & 1)) negate = true;
  }
  if (keep_prs) {
    out.prs.push_back(a);
    out.prs.push_back(b);
  }
  if (rdeg(b) == 0) {
    out.res = rpow(b[0], rdeg(a));
    if (negate) out.res = R() - out.res;
    return out;
  }
  R g = O::one(), h = O::one();
  for (;;) {
    int delta = rdeg(a) - rdeg(b);
    if ((rdeg(a) & 1) && (rdeg(b) & 1)) negate = !negate;
    RPoly<R> r = rprem(a, b);
    a = std::move(b);
    R div = g * rpow(h, delta);
    for (auto& x : r)
      if (!O::is_zero(x)) x = O::divexact(x, div);
    b = std::move(r);
    if (keep_prs && !b.empty()) out.prs.push_back(b);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = O::divexact(rpow(g, delta), rpow(h, delta - 1));
    }
    if (b.empty()) {
      out.res = R();
      return out;
    }
    if (rdeg(b) == 0) break;
  }
  int da = rdeg(a);
  R res = (da == 1) ? rpow(b[0], 1) : O::divexact(rpow(b[0], da), rpow(h, da - 1));
  out.res = negate ? R() - res : res;
  return out;
}

template <class R>
R resultant_generic(const RPoly<R>& a, const RPoly<R>& b) {
  return subresultant_chain<R>(a, b, false).res;
}

// Bivariate integer polynomials: main variable coefficients in Z[x].
using ZPoly2 = RPoly<ZPoly>;

}  // namespace msrs
