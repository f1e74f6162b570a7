// Word-size prime field arithmetic and the multimodular norm used to
// eliminate the last variable of a parametrized curve.
#pragma once

#include <cstdint>
#include <vector>

#include "msrs/upoly.hpp"

namespace msrs {

namespace modp {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;  // ascending, trimmed

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    return r >= p ? r - p : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 reduce(const Int& x) const;
};

bool is_prime(u64 n);
// Primes below 2^62, descending, deterministic.
u64 nth_prime(size_t k);

void trim(Vec& a);
Vec reduce(const Field& F, const ZPoly& a);
Vec rem(const Field& F, Vec a, const Vec& m);
Vec mulmod(const Field& F, const Vec& a, const Vec& b, const Vec& m);
// Inverse of a modulo m; empty when not invertible.
Vec invmod(const Field& F, const Vec& a, const Vec& m);
u64 resultant(const Field& F, Vec a, Vec b);
u64 eval(const Field& F, const Vec& a, u64 x);

}  // namespace modp

// Rational reconstruction of a mod m with |num|, den <= sqrt(m/2).
bool rational_reconstruct(const Int& a, const Int& m, Rat& out);

// The curve point over a root alpha of R is q = -s10(alpha)/s11(alpha) and
// sigma = -a0(alpha, q)/a1(alpha, q). Returns the primitive integer
// polynomial prod_alpha (sigma - sigma(alpha)) over all complex roots of R.
// R must be squarefree and coprime to s11 and to a1 along the curve.
ZPoly parametrized_norm(const ZPoly& R, const ZPoly& s11, const ZPoly& s10, const ZPoly2& a1, const ZPoly2& a0);

}  // namespace msrs
