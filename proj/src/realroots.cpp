#include "msrs/realroots.hpp"

#include <algorithm>
#include <functional>

namespace msrs {

Rat floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rat(q);
}

Rat ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rat(q);
}

std::string decimal(const Rat& x, int digits) {
  Rat a = rat_abs(x);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rat scaled = a * scale + Rat(1, 2);
  Int n = floor_rat(scaled).get_num();
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return (x < 0 && n != 0 ? "-" : "") + out;
}

namespace {

Rat pow2(long k) {
  Rat r(1);
  if (k >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

int descartes_01(const ZPoly& P) { return sign_variations(taylor_shift1(reverse(P))); }

struct Vca {
  long k;  // roots of the input lie in (0, 2^k)
  std::vector<IsolatingInterval> out;

  // P represents the input on (a/2^j, (a+1)/2^j) * 2^k mapped onto (0,1).
  void run(ZPoly P, const Int& a, long j) {
    // Roots at the endpoints were already recorded by the caller.
    P = shift_down(P, x_valuation(P));
    static const ZPoly x_minus_1(std::vector<Int>{-1, 1});
    while (P.deg() > 0 && eval(P, Rat(1)) == 0) P = divexact(P, x_minus_1);
    int v = descartes_01(P);
    if (v == 0) return;
    Rat lo = Rat(a) * pow2(k - j), hi = Rat(a + 1) * pow2(k - j);
    if (v == 1) {
      out.push_back({lo, hi});
      return;
    }
    ZPoly left = primitive(scale_pow2(P, 1));
    Int sum = 0;
    for (const auto& x : left.c) sum += x;
    ZPoly right = taylor_shift1(left);
    run(left, 2 * a, j + 1);
    if (sum == 0) {
      Rat mid = (lo + hi) / 2;
      out.push_back({mid, mid});
    }
    run(right, 2 * a + 1, j + 1);
  }
};

// Rational roots a/b of a primitive f have b | lc(f); two such candidates
// differ by at least 1/lc^2.
void detect_rational(const ZPoly& f, IsolatingInterval& I) {
  if (I.exact()) return;
  if (f.deg() == 1) {
    Rat r(-f.c[0], f.c[1]);
    r.canonicalize();
    I = {r, r};
    return;
  }
  Rat cand = simplest_in(I.lo, I.hi);
  if (sign_at(f, cand) == 0) {
    I = {cand, cand};
    return;
  }
  if (no_rational_roots_mod_small_primes(f)) return;
  Int L = abs(f.lc());
  Rat target(1, L * L * 2);
  IsolatingInterval J = refine_root(f, I, target);
  if (J.exact()) {
    I = J;
    return;
  }
  cand = simplest_in(J.lo, J.hi);
  if (cand.get_den() <= L && sign_at(f, cand) == 0) I = {cand, cand};
}

}  // namespace

bool no_rational_roots_mod_small_primes(const ZPoly& f) {
  static const unsigned primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  if (f.deg() <= 0) return true;
  if (f.c[0] == 0) return false;
  for (unsigned ell : primes) {
    if (mpz_fdiv_ui(f.lc().get_mpz_t(), ell) == 0) continue;
    std::vector<unsigned long> r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) r[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), ell);
    bool has_root = false;
    for (unsigned long x = 0; x < ell && !has_root; ++x) {
      unsigned long acc = 0;
      for (int i = f.deg(); i >= 0; --i) acc = (acc * x + r[i]) % ell;
      has_root = acc == 0;
    }
    if (!has_root) return true;
  }
  return false;
}

std::vector<IsolatingInterval> isolate_positive_roots(const ZPoly& f0) {
  if (f0.is_zero()) throw Error(ErrorCode::invalid_argument, "isolating roots of the zero polynomial");
  ZPoly f = squarefree(f0);
  f = shift_down(f, x_valuation(f));
  if (f.deg() <= 0) return {};
  Vca vca;
  vca.k = cauchy_bound_log2(f);
  ZPoly P = primitive(scale_pow2(f, -vca.k));
  vca.run(P, 0, 0);
  auto& out = vca.out;
  // VCA intervals are open and may start at 0 or share an endpoint with a
  // neighbour; shrink them so they are closed, positive and disjoint.
  for (size_t k = 0; k < out.size(); ++k) {
    while (!out[k].exact() && out[k].lo == 0) bisect_root(f, out[k]);
    while (k > 0 && !out[k].exact() && !(out[k - 1].hi < out[k].lo)) bisect_root(f, out[k]);
    while (k + 1 < out.size() && !out[k].exact() && !(out[k].hi < out[k + 1].lo)) bisect_root(f, out[k]);
  }
  for (auto& I : out) detect_rational(f, I);
  return out;
}

std::vector<IsolatingInterval> isolate_positive_roots(const MPoly& f, Var v) {
  return isolate_positive_roots(zpoly_from_mpoly(f, v));
}

namespace {

// Sign of f just to the right of x; x may be a simple root.
int right_sign(const ZPoly& f, const Rat& x) {
  int s = sign_at(f, x);
  return s != 0 ? s : sign_at(derivative(f), x);
}

}  // namespace

bool bisect_root(const ZPoly& f, IsolatingInterval& I) {
  if (I.exact()) return false;
  Rat mid = (I.lo + I.hi) / 2;
  int sm = sign_at(f, mid);
  if (sm == 0) {
    I = {mid, mid};
    return true;
  }
  if (right_sign(f, I.lo) == sm) {
    I.lo = mid;
  } else {
    I.hi = mid;
  }
  return true;
}

IsolatingInterval refine_root(const ZPoly& f, IsolatingInterval I, const Rat& width) {
  if (I.exact()) return I;
  int sl = right_sign(f, I.lo);
  while (!I.exact() && I.hi - I.lo > width) {
    Rat mid = (I.lo + I.hi) / 2;
    int sm = sign_at(f, mid);
    if (sm == 0) return {mid, mid};
    if (sm == sl) {
      I.lo = mid;
    } else {
      I.hi = mid;
    }
  }
  return I;
}

IsolatingInterval refine_root(const MPoly& f, Var v, const IsolatingInterval& I, const Rat& width) {
  return refine_root(squarefree(zpoly_from_mpoly(f, v)), I, width);
}

std::vector<OwnedInterval> isolate_positive_roots(const std::vector<ZPoly>& factors) {
  std::vector<OwnedInterval> all;
  for (size_t i = 0; i < factors.size(); ++i)
    for (const auto& iv : isolate_positive_roots(factors[i])) all.push_back({iv, i});
  auto key = [](const OwnedInterval& a, const OwnedInterval& b) { return a.iv.lo < b.iv.lo; };
  // Coprime factors have distinct roots: refine overlapping neighbours.
  for (;;) {
    std::sort(all.begin(), all.end(), key);
    bool changed = false;
    for (size_t j = 0; j + 1 < all.size(); ++j) {
      auto& a = all[j];
      auto& b = all[j + 1];
      if (a.iv.hi < b.iv.lo) continue;
      if (a.iv.exact() && b.iv.exact() && a.iv.lo == b.iv.lo)
        throw Error(ErrorCode::internal, "factors share a root");
      if (!a.iv.exact()) bisect_root(factors[a.factor], a.iv);
      if (!b.iv.exact()) bisect_root(factors[b.factor], b.iv);
      changed = true;
    }
    if (!changed) break;
  }
  return all;
}

Rat simplest_between(const Rat& a, const Rat& b) {
  // Continued-fraction descent of the Stern-Brocot tree.
  if (!(a < b)) throw Error(ErrorCode::empty_gap, "empty interval (" + rat_str(a) + ", " + rat_str(b) + ")");
  if (a < 0) {
    if (b > 0) return 0;
    return -simplest_between(-b, -a);
  }
  Rat n = floor_rat(a);
  if (n + 1 < b) return n + 1;
  // n <= a < b <= n + 1
  Rat lo = b - n;  // in (0, 1]
  Rat inner;
  if (a == n) {
    inner = floor_rat(Rat(1) / lo) + 1;
  } else {
    inner = simplest_between(Rat(1) / lo, Rat(1) / (a - n));
  }
  return n + Rat(1) / inner;
}

Rat simplest_in(const Rat& a, const Rat& b) {
  if (a == b) return a;
  Rat best = simplest_between(a, b);
  for (const Rat* e : {&a, &b}) {
    int c = cmp(e->get_den(), best.get_den());
    if (c < 0 || (c == 0 && cmp(abs(e->get_num()), abs(best.get_num())) < 0)) best = *e;
  }
  return best;
}

std::vector<Rat> sample_between(const std::vector<IsolatingInterval>& iv) {
  std::vector<Rat> out;
  Rat left = 0;
  for (const auto& I : iv) {
    if (!(left < I.lo))
      throw Error(ErrorCode::empty_gap, "adjacent isolating intervals touch at " + rat_str(I.lo));
    out.push_back(simplest_between(left, I.lo));
    left = I.hi;
  }
  out.push_back(iv.empty() ? Rat(1) : ceil_rat(iv.back().hi) + 1);
  return out;
}

}  // namespace msrs
