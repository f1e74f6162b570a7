#include "msrs/reduction.hpp"

namespace msrs {

namespace {

const MPoly kP = MPoly::variable(Var::p);
const MPoly kQ = MPoly::variable(Var::q);
const MPoly kZ = MPoly::variable(Var::z);
const MPoly kW = MPoly::variable(Var::w);
const MPoly kSigma = MPoly::variable(Var::sigma);

MPoly at_z(const MPoly& f, const MPoly& x) { return substitute(f, {{Var::z, x}}); }
MPoly at_s(const MPoly& f, const MPoly& s) { return substitute(f, {{Var::s, s}}); }

// Removes powers of the given polynomials common to numerator and denominator.
RatFunc cancel(const RatFunc& f, const std::vector<MPoly>& candidates) {
  MPoly num = f.num(), den = f.den();
  bool changed = false;
  for (const auto& c : candidates) {
    if (c.is_constant()) continue;
    MPoly qn, qd;
    while (!den.is_constant() && divides(c, den, &qd) && divides(c, num, &qn)) {
      num = qn;
      den = qd;
      changed = true;
    }
  }
  return changed ? RatFunc(num, den) : f;
}

struct Builder {
  const MSRSModel& m;
  std::vector<MPoly> cands;

  RatFunc tidy(const RatFunc& f) const { return cancel(f, cands); }

  // x-derivative of a model polynomial in z, as a function of z.
  RatFunc dx(const MPoly& f) const {
    MPoly d = derivative(f, Var::z);
    if (m.c_denominator == 1) return RatFunc(d);
    return RatFunc(d, MPoly::variable(Var::z, m.c_denominator - 1).scaled(m.c_denominator));
  }
  RatFunc dx_at(const MPoly& f, const MPoly& x) const {
    RatFunc d = dx(f);
    return RatFunc(at_z(d.num(), x), at_z(d.den(), x));
  }

  // d f_k / d x_k before substitution: f_k = -l(z) + sigma g(z)/(A(psi(z)+w) + h(z)),
  // differentiated in z with w (the other species) held fixed; then
  // z -> x, w -> rest.
  RatFunc own_partial(const MPoly& x, const MPoly& rest) const {
    MPoly den = at_s(m.A, at_z(m.psi, kZ) + kW) + m.h;
    RatFunc fk = RatFunc(-m.l) + RatFunc(kSigma * m.g, den);
    RatFunc d = derivative(fk, Var::z);
    if (m.c_denominator != 1)
      d = d * RatFunc(MPoly(1), MPoly::variable(Var::z, m.c_denominator - 1).scaled(m.c_denominator));
    Bindings b{{Var::z, x}, {Var::w, rest}};
    return tidy(substitute(d, b));
  }
};

}  // namespace

const RatFunc& ReducedNonDiagonal::G(int k) const {
  switch (k) {
    case 1: return G1;
    case 2: return G2;
    case 3: return G3;
    case 4: return G4;
  }
  throw Error(ErrorCode::invalid_argument, "G index out of range");
}

ReducedDiagonal diagonal_equilibrium(const MSRSModel& m) {
  MPoly s = at_z(m.psi, kQ).scaled(m.n);
  MPoly E = at_s(m.A, s) + at_z(m.h, kQ);
  MPoly lq = at_z(m.l, kQ);
  Builder b{m, {E, lq, kQ}};
  ReducedDiagonal r;
  r.F = b.tidy(RatFunc(-lq) + RatFunc(kSigma * at_z(m.g, kQ), E));
  RatFunc inv_Dn(-lq, E);  // 1 / D_n
  RatFunc dA = RatFunc(at_s(derivative(m.A, Var::s), s));
  RatFunc tau = b.own_partial(kQ, at_z(m.psi, kQ).scaled(m.n - 1));
  RatFunc xi = b.tidy(dA * b.dx_at(m.psi, kQ) * inv_Dn);
  r.G1 = b.tidy(tau - xi);
  r.G2 = b.tidy(tau + xi * RatFunc(MPoly(m.n - 1)));
  return r;
}

ReducedNonDiagonal nondiagonal_equilibrium(const MSRSModel& m, int i) {
  if (i < 1 || i > m.n / 2)
    throw Error(ErrorCode::bad_multiplicity,
                "template multiplicity i=" + std::to_string(i) + " outside 1.." + std::to_string(m.n / 2));
  int n = m.n;
  MPoly psp = at_z(m.psi, kP), psq = at_z(m.psi, kQ);
  MPoly s = psp.scaled(i) + psq.scaled(n - i);
  MPoly As = at_s(m.A, s);
  MPoly E1 = As + at_z(m.h, kP), E2 = As + at_z(m.h, kQ);
  MPoly lp = at_z(m.l, kP), lq = at_z(m.l, kQ);
  Builder b{m, {E1, E2, lp, lq, kP, kQ}};
  ReducedNonDiagonal r;
  r.i = i;
  r.F1 = b.tidy(RatFunc(-lp) + RatFunc(kSigma * at_z(m.g, kP), E1));
  r.F2 = b.tidy(RatFunc(-lq) + RatFunc(kSigma * at_z(m.g, kQ), E2));
  RatFunc inv_D1(-lp, E1), inv_Dn(-lq, E2);
  RatFunc dA = RatFunc(at_s(derivative(m.A, Var::s), s));
  RatFunc dpsi_p = b.dx_at(m.psi, kP), dpsi_q = b.dx_at(m.psi, kQ);
  RatFunc beta = b.own_partial(kP, psp.scaled(i - 1) + psq.scaled(n - i));
  RatFunc tau = b.own_partial(kQ, psp.scaled(i) + psq.scaled(n - i - 1));
  // x_2 shares p with x_1 only when i >= 2; x_{n-1} shares q with x_n only
  // when n - i >= 2.
  RatFunc gamma = b.tidy(dA * (i >= 2 ? dpsi_p : dpsi_q) * inv_D1);
  RatFunc xi = b.tidy(dA * (n - i >= 2 ? dpsi_q : dpsi_p) * inv_Dn);
  RatFunc mu = b.tidy(dA * dpsi_q * inv_D1);
  RatFunc nu = b.tidy(dA * dpsi_p * inv_Dn);
  RatFunc im1(MPoly(i - 1)), nim1(MPoly(n - i - 1));
  r.G1 = b.tidy(tau - xi);
  r.G2 = b.tidy(beta - gamma);
  r.G3 = b.tidy(beta + tau + im1 * gamma + nim1 * xi);
  RatFunc left = b.tidy(beta + im1 * gamma), right = b.tidy(tau + nim1 * xi);
  r.G4 = b.tidy(left * right - RatFunc(MPoly(i * (n - i))) * mu * nu);
  return r;
}

ClearedFraction clear_denominators(const RatFunc& rf) {
  ClearedFraction out;
  Rat cn = rf.num().is_zero() ? Rat(1) : rf.num().content();
  Rat cd = rf.den().content();
  // num/den = (cn/cd) * pn/pd with pn, pd primitive integer polynomials.
  Rat k = cn / cd;
  MPoly pn = rf.num().is_zero() ? MPoly() : rf.num().scaled(Rat(1) / cn);
  MPoly pd = rf.den().scaled(Rat(1) / cd);
  out.num = pn.scaled(Rat(k.get_num()));
  out.den = pd.scaled(Rat(k.get_den()));
  out.den_positive = positive_on_orthant(out.den);
  return out;
}

MPoly difference_poly(const RatFunc& F1, const RatFunc& F2) {
  MPoly full = F1.num() * F2.den() - F2.num() * F1.den();
  if (full.is_zero()) return MPoly();
  MPoly d;
  if (!divides(kP - kQ, full, &d))
    throw Error(ErrorCode::not_divisible, "p - q does not divide the template difference");
  return d;
}

std::vector<SignCondition> stability_conditions(int n, int i) {
  if (i == 0) return {{1, -1}, {2, -1}};
  if (i == 1 && n == 2) return {{3, -1}, {4, 1}};
  if (i == 1) return {{1, -1}, {3, -1}, {4, 1}};
  return {{1, -1}, {2, -1}, {3, -1}, {4, 1}};
}

}  // namespace msrs
