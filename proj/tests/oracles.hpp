// Independent brute-force oracles used only by the tests.
#pragma once

#include <random>
#include <vector>

#include "msrs/core.hpp"
#include "msrs/upoly.hpp"

namespace oracle {

using msrs::Int;
using msrs::MPoly;
using msrs::Rat;

// Sylvester matrix of f (deg m) and g (deg n) in the main variable, rows of f
// first, coefficients ordered from the leading one.
template <class R>
std::vector<std::vector<R>> sylvester(const std::vector<R>& f, const std::vector<R>& g) {
  int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
  int N = m + n;
  std::vector<std::vector<R>> S(N, std::vector<R>(N));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S[r][r + k] = f[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S[n + r][r + k] = g[n - k];
  return S;
}

// Fraction-free Bareiss elimination over an integral domain with exact
// division.
template <class R, class Div, class IsZero>
R bareiss_det(std::vector<std::vector<R>> M, Div divexact, IsZero is_zero) {
  int N = static_cast<int>(M.size());
  if (N == 0) return R(1);
  R prev(1);
  bool neg = false;
  for (int k = 0; k < N - 1; ++k) {
    if (is_zero(M[k][k])) {
      int piv = -1;
      for (int r = k + 1; r < N; ++r)
        if (!is_zero(M[r][k])) {
          piv = r;
          break;
        }
      if (piv < 0) return R(0);
      std::swap(M[k], M[piv]);
      neg = !neg;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j)
        M[i][j] = divexact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
    prev = M[k][k];
  }
  R d = M[N - 1][N - 1];
  return neg ? R(R(0) - d) : d;
}

inline Rat det_rat(std::vector<std::vector<Rat>> M) {
  int N = static_cast<int>(M.size());
  Rat det = 1;
  for (int k = 0; k < N; ++k) {
    int piv = -1;
    for (int r = k; r < N; ++r)
      if (M[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      std::swap(M[k], M[piv]);
      det = -det;
    }
    det *= M[k][k];
    for (int i = k + 1; i < N; ++i) {
      Rat f = M[i][k] / M[k][k];
      for (int j = k; j < N; ++j) M[i][j] -= f * M[k][j];
    }
  }
  return det;
}

// Sturm chain over Q: number of distinct real roots in (0, inf).
inline int sturm_positive_roots(const std::vector<Rat>& f_asc) {
  using Poly = std::vector<Rat>;
  auto trim = [](Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto rem = [&](Poly a, const Poly& b) {
    while (a.size() >= b.size() && !a.empty()) {
      Rat k = a.back() / b.back();
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= k * b[i];
      a.pop_back();
      trim(a);
    }
    return a;
  };
  Poly f = f_asc;
  trim(f);
  if (f.size() <= 1) return 0;
  Poly df;
  for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * Rat(static_cast<long>(i)));
  std::vector<Poly> chain{f, df};
  while (chain.back().size() > 1) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    chain.push_back(r);
  }
  // The chain ends in gcd(f, f'); dividing through does not change the
  // variation count at points that are not roots of f.
  auto variations = [&](auto sign_of) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
      int s = sign_of(p);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  // At 0+: sign of the lowest nonzero coefficient. At +inf: sign of lc.
  auto at_zero_plus = [](const Poly& p) {
    for (const auto& c : p)
      if (c != 0) return msrs::sgn(c);
    return 0;
  };
  auto at_inf = [](const Poly& p) { return p.empty() ? 0 : msrs::sgn(p.back()); };
  // If f(0) = 0 the root at 0 is excluded automatically by using 0+.
  return variations(at_zero_plus) - variations(at_inf);
}

inline std::vector<Int> random_ints(std::mt19937_64& rng, int deg, int bound, bool nonzero_lead = true) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Int> c(deg + 1);
  for (auto& x : c) x = d(rng);
  if (nonzero_lead)
    while (c.back() == 0) c.back() = d(rng);
  return c;
}

}  // namespace oracle
