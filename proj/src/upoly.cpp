#include "msrs/upoly.hpp"

#include <algorithm>
#include <cmath>

namespace msrs {

ZPoly ZPoly::x_pow(unsigned e, const Int& coef) {
  ZPoly r;
  if (coef == 0) return r;
  r.c.assign(e + 1, Int(0));
  r.c[e] = coef;
  return r;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
  trim();
  return *this;
}

namespace {

size_t max_bits(const std::vector<Int>& v) {
  size_t b = 0;
  for (const auto& x : v) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

// Kronecker substitution with signed digits; slot width is a whole number of
// 64-bit limbs.
ZPoly kronecker_mul(const ZPoly& a, const ZPoly& b) {
  size_t bits = max_bits(a.c) + max_bits(b.c) +
                static_cast<size_t>(std::ceil(std::log2(std::min(a.c.size(), b.c.size()) + 1.0))) + 2;
  size_t limbs = (bits + 63) / 64;
  auto pack = [limbs](const std::vector<Int>& v) {
    std::vector<uint64_t> pos(limbs * v.size(), 0), neg(limbs * v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      size_t count = 0;
      auto* dst = v[i] > 0 ? pos.data() : neg.data();
      mpz_export(dst + i * limbs, &count, -1, 8, 0, 0, v[i].get_mpz_t());
    }
    Int p, n;
    mpz_import(p.get_mpz_t(), pos.size(), -1, 8, 0, 0, pos.data());
    mpz_import(n.get_mpz_t(), neg.size(), -1, 8, 0, 0, neg.data());
    return Int(p - n);
  };
  Int prod = pack(a.c) * pack(b.c);
  bool negative = prod < 0;
  if (negative) prod = -prod;
  size_t n_out = a.c.size() + b.c.size() - 1;
  std::vector<uint64_t> words(limbs * (n_out + 1), 0);
  size_t count = 0;
  mpz_export(words.data(), &count, -1, 8, 0, 0, prod.get_mpz_t());
  ZPoly r;
  r.c.resize(n_out);
  // Digits are read as limbs-wide chunks with a borrow into the next chunk.
  Int full, half;
  mpz_ui_pow_ui(full.get_mpz_t(), 2, limbs * 64);
  mpz_ui_pow_ui(half.get_mpz_t(), 2, limbs * 64 - 1);
  int carry = 0;
  for (size_t i = 0; i < n_out; ++i) {
    Int d;
    mpz_import(d.get_mpz_t(), limbs, -1, 8, 0, 0, words.data() + i * limbs);
    d += carry;
    if (d >= half) {
      d -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    r.c[i] = negative ? Int(-d) : d;
  }
  r.trim();
  return r;
}

}  // namespace

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZPoly();
  if (a.c.size() == 1) return b * a.c[0];
  if (b.c.size() == 1) return a * b.c[0];
  if (std::min(a.c.size(), b.c.size()) > 12) return kronecker_mul(a, b);
  ZPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
  }
  r.trim();
  return r;
}

ZPoly operator*(const ZPoly& a, const Int& k) {
  if (k == 0) return ZPoly();
  ZPoly r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

ZPoly pow(const ZPoly& a, unsigned e) { return rpow<ZPoly>(a, e); }

Int content(const ZPoly& a) {
  Int g = 0;
  for (const auto& x : a.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly divexact(const ZPoly& a, const Int& k) {
  if (k == 1) return a;
  ZPoly r = a;
  for (auto& x : r.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  return r;
}

ZPoly primitive(const ZPoly& a) {
  if (a.is_zero()) return a;
  Int g = content(a);
  if (a.lc() < 0) g = -g;
  return divexact(a, g);
}

bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "division by the zero polynomial");
  if (a.is_zero()) {
    if (quotient) *quotient = ZPoly();
    return true;
  }
  int da = a.deg(), db = b.deg();
  if (da < db) return false;
  std::vector<Int> r = a.c;
  std::vector<Int> q(da - db + 1);
  const Int& lb = b.lc();
  for (int k = da; k >= db; --k) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t())) return false;
    Int t;
    mpz_divexact(t.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) mpz_submul(r[j + k - db].get_mpz_t(), t.get_mpz_t(), b.c[j].get_mpz_t());
    q[k - db] = t;
  }
  for (int j = 0; j < db; ++j)
    if (r[j] != 0) return false;
  if (quotient) *quotient = ZPoly(std::move(q));
  return true;
}

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!divides(b, a, &q)) throw Error(ErrorCode::not_divisible, "polynomial division is not exact");
  return q;
}

ZPoly prem(const ZPoly& a, const ZPoly& b) {
  int da = a.deg(), db = b.deg();
  if (da < db) return a;
  std::vector<Int> r = a.c;
  const Int& lb = b.lc();
  for (int k = da; k >= db; --k) {
    Int t = r[k];
    r[k] = 0;
    for (int j = 0; j < k; ++j) r[j] *= lb;
    if (t != 0)
      for (int j = 0; j < db; ++j) mpz_submul(r[j + k - db].get_mpz_t(), t.get_mpz_t(), b.c[j].get_mpz_t());
  }
  r.resize(db);
  return ZPoly(std::move(r));
}

ZPoly derivative(const ZPoly& a) {
  if (a.deg() <= 0) return ZPoly();
  std::vector<Int> r(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(r));
}

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.is_zero()) return primitive(b0);
  if (b0.is_zero()) return primitive(a0);
  ZPoly a = primitive(a0), b = primitive(b0);
  if (a.deg() < b.deg()) std::swap(a, b);
  // Primitive PRS: each remainder is made primitive.
  while (!b.is_zero()) {
    if (b.deg() == 0) return ZPoly(Int(1));
    ZPoly r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive(a);
}

ZPoly squarefree(const ZPoly& a) {
  if (a.is_zero()) throw Error(ErrorCode::invalid_argument, "squarefree part of zero");
  if (a.deg() <= 0) return ZPoly(Int(1));
  ZPoly g = gcd(a, derivative(a));
  return primitive(divexact(primitive(a), g));
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a) {
  // g_j = gcd(g_{j-1}, g_{j-1}'); h_j = g_{j-1}/g_j collects factors of
  // multiplicity >= j, and f_j = h_j / h_{j+1}.
  std::vector<std::pair<ZPoly, int>> out;
  if (a.deg() <= 0) return out;
  std::vector<ZPoly> h;
  ZPoly g = primitive(a);
  while (g.deg() > 0) {
    ZPoly next = gcd(g, derivative(g));
    h.push_back(primitive(divexact(g, next)));
    g = next;
  }
  h.push_back(ZPoly(Int(1)));
  for (size_t j = 0; j + 1 < h.size(); ++j) {
    ZPoly f = primitive(divexact(h[j], h[j + 1]));
    if (f.deg() > 0) out.push_back({f, static_cast<int>(j + 1)});
  }
  return out;
}

Int resultant(const ZPoly& a, const ZPoly& b) { return resultant_generic<Int>(a.c, b.c); }

Rat eval(const ZPoly& a, const Rat& x) {
  // Horner over the common denominator: sum a_i n^i d^(deg-i)
  if (a.is_zero()) return 0;
  const Int& n = x.get_num();
  const Int& d = x.get_den();
  Int acc = a.lc();
  Int dpow = 1;
  for (int i = a.deg() - 1; i >= 0; --i) {
    dpow *= d;
    acc = acc * n + a.c[i] * dpow;
  }
  Rat r(acc, dpow);
  r.canonicalize();
  return r;
}

int sign_at(const ZPoly& a, const Rat& x) {
  if (a.is_zero()) return 0;
  const Int& n = x.get_num();
  const Int& d = x.get_den();
  Int acc = a.lc();
  Int dpow = 1;
  for (int i = a.deg() - 1; i >= 0; --i) {
    dpow *= d;
    acc = acc * n + a.c[i] * dpow;
  }
  return sgn(acc);
}

double eval_double(const ZPoly& a, double x) {
  double acc = 0;
  for (int i = a.deg(); i >= 0; --i) acc = acc * x + a.c[i].get_d();
  return acc;
}

ZPoly taylor_shift1(const ZPoly& a) {
  std::vector<Int> c = a.c;
  int n = a.deg();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) c[j] += c[j + 1];
  return ZPoly(std::move(c));
}

ZPoly reverse(const ZPoly& a) {
  std::vector<Int> c(a.c.rbegin(), a.c.rend());
  return ZPoly(std::move(c));
}

ZPoly scale_pow2(const ZPoly& a, long k) {
  ZPoly r = a;
  int n = a.deg();
  if (k >= 0) {
    for (int i = 0; i <= n; ++i) mpz_mul_2exp(r.c[i].get_mpz_t(), r.c[i].get_mpz_t(), static_cast<mp_bitcnt_t>(k) * (n - i));
  } else {
    for (int i = 0; i <= n; ++i) mpz_mul_2exp(r.c[i].get_mpz_t(), r.c[i].get_mpz_t(), static_cast<mp_bitcnt_t>(-k) * i);
  }
  return r;
}

int sign_variations(const ZPoly& a) {
  int v = 0, last = 0;
  for (const auto& x : a.c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int x_valuation(const ZPoly& a) {
  int k = 0;
  while (k < static_cast<int>(a.c.size()) && a.c[k] == 0) ++k;
  return k;
}

ZPoly shift_down(const ZPoly& a, int k) {
  if (k == 0) return a;
  return ZPoly(std::vector<Int>(a.c.begin() + k, a.c.end()));
}

long cauchy_bound_log2(const ZPoly& a) {
  // 1 + max |a_i|/|a_n| <= 2^(bits(max) - bits(lc) + 2)
  if (a.deg() <= 0) return 0;
  size_t mb = 0;
  for (int i = 0; i < a.deg(); ++i) mb = std::max(mb, mpz_sizeinbase(a.c[i].get_mpz_t(), 2));
  long lb = static_cast<long>(mpz_sizeinbase(a.lc().get_mpz_t(), 2));
  return std::max<long>(1, static_cast<long>(mb) - lb + 2);
}

ZPoly zpoly_from_rats(const std::vector<Rat>& ascending) {
  Int l = 1;
  for (const auto& r : ascending) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  std::vector<Int> c(ascending.size());
  for (size_t i = 0; i < ascending.size(); ++i) c[i] = ascending[i].get_num() * (l / ascending[i].get_den());
  return primitive(ZPoly(std::move(c)));
}

ZPoly zpoly_from_mpoly(const MPoly& f, Var v) { return zpoly_from_rats(f.univariate_coeffs(v)); }

MPoly to_mpoly(const ZPoly& a, Var v) {
  std::vector<Rat> r(a.c.begin(), a.c.end());
  return MPoly::univariate(v, r);
}

std::string str(const ZPoly& a, const char* var) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.deg(); i >= 0; --i) {
    if (a.c[i] == 0) continue;
    Int k = a.c[i];
    bool neg = k < 0;
    if (neg) k = -k;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0 || k != 1) out += k.get_str();
    if (i > 0) {
      if (k != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace msrs
