#include "msrs/modular.hpp"

#include <mutex>

namespace msrs {

namespace modp {

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::reduce(const Int& x) const {
  // mpz_fdiv_ui takes an unsigned long, which is 64 bits here.
  return static_cast<u64>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p)));
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  Field F{n};
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = F.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int k = 1; k < r; ++k) {
      x = F.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 nth_prime(size_t k) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  u64 next = cache.empty() ? (1ULL << 62) - 1 : cache.back() - 2;
  while (cache.size() <= k) {
    while (!is_prime(next)) next -= 2;
    cache.push_back(next);
    next -= 2;
  }
  return cache[k];
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec reduce(const Field& F, const ZPoly& a) {
  Vec r(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) r[i] = F.reduce(a.c[i]);
  trim(r);
  return r;
}

Vec rem(const Field& F, Vec a, const Vec& m) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < dm) return a;
  u64 inv = F.inv(m.back());
  for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
    u64 t = F.mul(a[k], inv);
    if (t == 0) continue;
    for (int j = 0; j <= dm; ++j) a[k - dm + j] = F.sub(a[k - dm + j], F.mul(t, m[j]));
  }
  a.resize(dm);
  trim(a);
  return a;
}

Vec mulmod(const Field& F, const Vec& a, const Vec& b, const Vec& m) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return rem(F, std::move(r), m);
}

namespace {

// r = a - t * x^s * b
void submul_shift(const Field& F, Vec& a, const Vec& b, u64 t, size_t s) {
  if (a.size() < b.size() + s) a.resize(b.size() + s, 0);
  for (size_t j = 0; j < b.size(); ++j) a[j + s] = F.sub(a[j + s], F.mul(t, b[j]));
  trim(a);
}

}  // namespace

Vec invmod(const Field& F, const Vec& a0, const Vec& m) {
  // Extended Euclid tracking the cofactor of a.
  Vec r0 = m, r1 = rem(F, a0, m);
  Vec t0, t1{1};
  while (!r1.empty() && r1.size() > 1) {
    Vec r = r0, t = t0;
    u64 inv = F.inv(r1.back());
    while (r.size() >= r1.size()) {
      size_t s = r.size() - r1.size();
      u64 c = F.mul(r.back(), inv);
      submul_shift(F, r, r1, c, s);
      submul_shift(F, t, t1, c, s);
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r1.empty()) return {};
  u64 c = F.inv(r1[0]);
  for (auto& x : t1) x = F.mul(x, c);
  return rem(F, t1, m);
}

u64 resultant(const Field& F, Vec a, Vec b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  u64 res = 1;
  while (b.size() > 1) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    Vec r = rem(F, a, b);
    if (r.empty()) return 0;
    int dr = static_cast<int>(r.size()) - 1;
    if ((da & 1) && (db & 1)) res = F.neg(res);
    res = F.mul(res, F.pow(b.back(), static_cast<u64>(da - dr)));
    a = std::move(b);
    b = std::move(r);
  }
  int da = static_cast<int>(a.size()) - 1;
  return F.mul(res, F.pow(b[0], static_cast<u64>(da)));
}

u64 eval(const Field& F, const Vec& a, u64 x) {
  u64 r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

}  // namespace modp

bool rational_reconstruct(const Int& a, const Int& m, Rat& out) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Int r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rat(r1, t1);
  out.canonicalize();
  return true;
}

namespace {

using modp::Field;
using modp::u64;
using modp::Vec;

// Monic image of prod (sigma - sigma(alpha)) modulo one prime, or empty on a
// bad prime.
bool norm_image(const Field& F, const ZPoly& R, const ZPoly& s11, const ZPoly& s10, const ZPoly2& a1,
                const ZPoly2& a0, Vec& out) {
  Vec Rl = modp::reduce(F, R);
  if (static_cast<int>(Rl.size()) - 1 != R.deg()) return false;
  size_t D = Rl.size() - 1;
  Vec inv11 = modp::invmod(F, modp::reduce(F, s11), Rl);
  if (inv11.empty()) return false;
  Vec q = modp::mulmod(F, modp::reduce(F, s10), inv11, Rl);
  for (auto& x : q) x = F.neg(x);
  auto along = [&](const ZPoly2& a) {
    Vec acc;
    for (size_t j = a.size(); j-- > 0;) {
      acc = modp::mulmod(F, acc, q, Rl);
      Vec c = modp::rem(F, modp::reduce(F, a[j]), Rl);
      if (acc.size() < c.size()) acc.resize(c.size(), 0);
      for (size_t k = 0; k < c.size(); ++k) acc[k] = F.add(acc[k], c[k]);
      modp::trim(acc);
    }
    return acc;
  };
  Vec v1 = along(a1), v0 = along(a0);
  Vec inv1 = modp::invmod(F, v1, Rl);
  if (inv1.empty()) return false;
  Vec S = modp::mulmod(F, v0, inv1, Rl);
  for (auto& x : S) x = F.neg(x);
  // Values of prod (x - S(alpha)) at x = 0..D, then Newton interpolation.
  u64 lcR = Rl.back();
  std::vector<u64> ys(D + 1);
  for (size_t j = 0; j <= D; ++j) {
    Vec g = S;
    if (g.empty()) g.push_back(0);
    g[0] = F.sub(static_cast<u64>(j) % F.p, g[0]);
    for (size_t k = 1; k < g.size(); ++k) g[k] = F.neg(g[k]);
    modp::trim(g);
    u64 res = modp::resultant(F, Rl, g);
    size_t dg = g.empty() ? 0 : g.size() - 1;
    ys[j] = F.mul(res, F.inv(F.pow(lcR, dg)));
  }
  // Divided differences on nodes 0..D.
  std::vector<u64> dd = ys;
  for (size_t k = 1; k <= D; ++k)
    for (size_t j = D; j >= k; --j) {
      u64 den = F.inv(static_cast<u64>(k) % F.p);
      dd[j] = F.mul(F.sub(dd[j], dd[j - 1]), den);
      if (j == k) break;
    }
  // Expand the Newton form.
  Vec poly{dd[D]};
  for (size_t k = D; k-- > 0;) {
    // poly = poly * (x - k) + dd[k]
    Vec next(poly.size() + 1, 0);
    u64 node = static_cast<u64>(k) % F.p;
    for (size_t t = 0; t < poly.size(); ++t) {
      next[t + 1] = F.add(next[t + 1], poly[t]);
      next[t] = F.sub(next[t], F.mul(poly[t], node));
    }
    next[0] = F.add(next[0], dd[k]);
    poly = std::move(next);
  }
  poly.resize(D + 1, 0);
  if (poly[D] != 1) return false;  // interpolation must be monic
  out = std::move(poly);
  return true;
}

}  // namespace

ZPoly parametrized_norm(const ZPoly& R, const ZPoly& s11, const ZPoly& s10, const ZPoly2& a1,
                        const ZPoly2& a0) {
  if (R.deg() <= 0) return ZPoly(Int(1));
  size_t D = static_cast<size_t>(R.deg());
  std::vector<Int> crt(D, Int(0));
  Int M = 1;
  ZPoly cand;
  int stable = 0, bad = 0;
  for (size_t k = 0;; ++k) {
    Field F{modp::nth_prime(k)};
    Vec img;
    if (!norm_image(F, R, s11, s10, a1, a0, img)) {
      if (++bad > 40) throw Error(ErrorCode::internal, "norm: too many unlucky primes");
      continue;
    }
    if (!cand.is_zero()) {
      u64 lc = F.reduce(cand.lc());
      if (lc != 0) {
        u64 inv = F.inv(lc);
        bool same = true;
        for (size_t j = 0; j < D && same; ++j) same = F.mul(F.reduce(cand.coef(static_cast<int>(j))), inv) == img[j];
        if (same) {
          if (++stable >= 2) return cand;
        } else {
          cand = ZPoly();
          stable = 0;
        }
      }
    }
    // CRT update.
    Int ell(static_cast<unsigned long>(F.p));
    Int Minv_l;
    Int Mmod = M % ell;
    mpz_invert(Minv_l.get_mpz_t(), Mmod.get_mpz_t(), ell.get_mpz_t());
    for (size_t j = 0; j < D; ++j) {
      Int diff = Int(static_cast<unsigned long>(img[j])) - crt[j] % ell;
      Int t = (diff * Minv_l) % ell;
      if (t < 0) t += ell;
      crt[j] += M * t;
    }
    M *= ell;
    if (cand.is_zero()) {
      std::vector<Rat> coeffs(D + 1);
      coeffs[D] = 1;
      bool ok = true;
      for (size_t j = D; j-- > 0 && ok;) ok = rational_reconstruct(crt[j], M, coeffs[j]);
      if (ok) {
        cand = zpoly_from_rats(coeffs);
        stable = 0;
      }
    }
  }
}

}  // namespace msrs
