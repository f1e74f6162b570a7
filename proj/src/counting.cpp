#include "msrs/counting.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <map>

#include "msrs/parallel.hpp"

namespace msrs {

namespace {

const MPoly kP = MPoly::variable(Var::p);
const MPoly kQ = MPoly::variable(Var::q);
constexpr int P = static_cast<int>(Var::p);
constexpr int Q = static_cast<int>(Var::q);

MPoly at_sigma(const MPoly& f, const Rat& v) { return substitute(f, {{Var::sigma, MPoly(v)}}); }
RatFunc at_sigma(const RatFunc& f, const Rat& v) { return substitute(f, {{Var::sigma, MPoly(v)}}); }
MPoly swap_pq(const MPoly& f) { return substitute(f, {{Var::p, kQ}, {Var::q, kP}}); }

void require_vars(const MPoly& f, std::initializer_list<Var> allowed, const char* what) {
  for (Var w : f.variables())
    if (std::find(allowed.begin(), allowed.end(), w) == allowed.end())
      throw Error(ErrorCode::invalid_argument, std::string(what) + ": unexpected variable " + var_name(w));
}

// The closed interval I holds exactly one root of the squarefree f, and g
// divides f: does that root belong to g?
bool root_of_divisor_in(const ZPoly& g, const IsolatingInterval& I) {
  if (g.deg() <= 0) return false;
  if (I.exact()) return sign_at(g, I.lo) == 0;
  return sign_at(g, I.lo) * sign_at(g, I.hi) < 0;
}

ZPoly univariate_of(const MPoly& f, Var v) {
  if (f.is_constant()) return ZPoly(f.is_zero() ? Int(0) : Int(1));
  return zpoly_from_mpoly(f, v);
}

Sign to_sign(int s) { return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero); }

}  // namespace

RBox PlanarLocus::box() const {
  RBox b;
  b[P] = {Ip.lo, Ip.hi};
  b[Q] = {Iq.lo, Iq.hi};
  return b;
}

void PlanarLocus::shrink() {
  bisect_root(Rp, Ip);
  bisect_root(Rq, Iq);
}

Sign sign_at_root(const RatFunc& G, const ZPoly& f, Var v, IsolatingInterval I, int max_steps) {
  require_vars(G.num(), {v}, "sign_at_root");
  require_vars(G.den(), {v}, "sign_at_root");
  ZPoly fs = squarefree(f);
  bool num_checked = false;
  for (int step = 0;; ++step) {
    RBox b;
    b[static_cast<int>(v)] = {I.lo, I.hi};
    int sn = eval_positive(G.num(), b).sign(), sd = eval_positive(G.den(), b).sign();
    if (sn && sd) return to_sign(sn * sd);
    if (I.exact()) {
      if (sd == 0) throw Error(ErrorCode::undecidable, "sign_at_root: denominator vanishes at the root");
      return Sign::zero;
    }
    if (!sn && !num_checked) {
      num_checked = true;
      if (G.num().is_zero() || root_of_divisor_in(gcd(fs, univariate_of(G.num(), v)), I)) {
        if (sd) return Sign::zero;
        throw Error(ErrorCode::undecidable, "sign_at_root: numerator and denominator vanish at the root");
      }
    }
    if (step >= max_steps) throw Error(ErrorCode::undecidable, "sign_at_root: sign not determined after refinement");
    bisect_root(fs, I);
  }
}

Sign sign_at_root(const RatFunc& G, PlanarLocus L, int max_steps) {
  require_vars(G.num(), {Var::p, Var::q}, "sign_at_root");
  require_vars(G.den(), {Var::p, Var::q}, "sign_at_root");
  for (int step = 0;; ++step) {
    RBox b = L.box();
    int sn = eval_positive(G.num(), b).sign(), sd = eval_positive(G.den(), b).sign();
    if (sn && sd) return to_sign(sn * sd);
    if (L.Ip.exact() && L.Iq.exact()) {
      if (sd == 0) throw Error(ErrorCode::undecidable, "sign_at_root: denominator vanishes at the point");
      return Sign::zero;
    }
    if (step >= max_steps) throw Error(ErrorCode::undecidable, "sign_at_root: sign not determined after refinement");
    L.shrink();
  }
}

TemplateCount count_diagonal(const MSRSModel& m, const Rat& v, const CountingOptions& opt) {
  ReducedDiagonal r = diagonal_equilibrium(m);
  ClearedFraction F = clear_denominators(r.F);
  MPoly Fv = at_sigma(F.num, v);
  TemplateCount tc;
  tc.i = 0;
  if (Fv.is_zero()) throw Error(ErrorCode::infinite_solutions, "diagonal equation vanishes identically");
  if (!Fv.has_var(Var::q)) return tc;
  ZPoly f = squarefree(zpoly_from_mpoly(Fv, Var::q));
  RatFunc den(at_sigma(F.den, v));
  RatFunc G1 = at_sigma(r.G1, v), G2 = at_sigma(r.G2, v);
  for (const auto& I : isolate_positive_roots(f)) {
    if (!F.den_positive && sign_at_root(den, f, Var::q, I, opt.sign_steps) == Sign::zero) continue;
    ++tc.e_raw;
    Sign s1 = sign_at_root(G1, f, Var::q, I, opt.sign_steps);
    Sign s2 = sign_at_root(G2, f, Var::q, I, opt.sign_steps);
    if (s1 == Sign::zero || s2 == Sign::zero)
      throw Error(ErrorCode::degenerate_solution, "diagonal equilibrium with a zero eigenvalue");
    if (s1 == Sign::negative && s2 == Sign::negative) ++tc.s_raw;
  }
  return tc;
}

namespace {

struct PlanarSystem {
  MPoly A, S, Ap, Aq, Sp, Sq;
  PlanarSystem(const MPoly& a, const MPoly& s)
      : A(a),
        S(s),
        Ap(derivative(a, Var::p)),
        Aq(derivative(a, Var::q)),
        Sp(derivative(s, Var::p)),
        Sq(derivative(s, Var::q)) {}
};

// 1: X holds exactly one solution; 0: none; -1: undecided.
int krawczyk(const PlanarSystem& s, const RBox& X) {
  Rat mp = X[P].mid(), mq = X[Q].mid();
  std::array<Rat, kNumVars> pt{};
  pt[P] = mp;
  pt[Q] = mq;
  std::array<double, kNumVars> pd{};
  pd[P] = mp.get_d();
  pd[Q] = mq.get_d();
  double a = s.Ap.eval_double(pd), b = s.Aq.eval_double(pd), c = s.Sp.eval_double(pd), d = s.Sq.eval_double(pd);
  double det = a * d - b * c;
  if (!std::isfinite(det) || det == 0) return -1;
  double yd[2][2] = {{d / det, -b / det}, {-c / det, a / det}};
  Rat Y[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (!std::isfinite(yd[i][j])) return -1;
      Y[i][j] = Rat(yd[i][j]);
    }
  Rat f[2] = {s.A.eval(pt), s.S.eval(pt)};
  RInterval J[2][2] = {{eval_positive(s.Ap, X), eval_positive(s.Aq, X)},
                       {eval_positive(s.Sp, X), eval_positive(s.Sq, X)}};
  RInterval dx[2] = {X[P] - RInterval(mp), X[Q] - RInterval(mq)};
  Rat m[2] = {mp, mq};
  RInterval K[2];
  for (int i = 0; i < 2; ++i) {
    Rat r = m[i] - (Y[i][0] * f[0] + Y[i][1] * f[1]);
    RInterval acc(r);
    for (int j = 0; j < 2; ++j) {
      RInterval Mij = RInterval(Rat(i == j ? 1 : 0)) - (RInterval(Y[i][0]) * J[0][j] + RInterval(Y[i][1]) * J[1][j]);
      acc = acc + Mij * dx[j];
    }
    K[i] = acc;
  }
  if (K[0].disjoint(X[P]) || K[1].disjoint(X[Q])) return 0;
  if (K[0].inside_interior(X[P]) && K[1].inside_interior(X[Q])) return 1;
  return -1;
}

// With one coordinate an exact rational, decide the cell by univariate gcds.
bool exact_cell(const PlanarSystem& s, const PlanarLocus& L) {
  bool p_exact = L.Ip.exact();
  Var fixed = p_exact ? Var::p : Var::q, free = p_exact ? Var::q : Var::p;
  const Rat& x = p_exact ? L.Ip.lo : L.Iq.lo;
  const IsolatingInterval& I = p_exact ? L.Iq : L.Ip;
  MPoly a = substitute(s.A, {{fixed, MPoly(x)}}), b = substitute(s.S, {{fixed, MPoly(x)}});
  if (a.is_zero() && b.is_zero())
    throw Error(ErrorCode::infinite_solutions, "solve_bivariate: a line of solutions at " + rat_str(x));
  if (I.exact()) {
    std::array<Rat, kNumVars> pt{};
    pt[static_cast<int>(fixed)] = x;
    pt[static_cast<int>(free)] = I.lo;
    return a.eval(pt) == 0 && b.eval(pt) == 0;
  }
  MPoly h = a.is_zero() ? b : (b.is_zero() ? a : univariate_gcd(a, b, free));
  if (!h.has_var(free)) return false;
  return root_of_divisor_in(squarefree(zpoly_from_mpoly(h, free)), I);
}

// Does the root isolated by Ia (of a squarefree polynomial divisible by g)
// coincide with a root of g that also lies in Ib?
bool shared_root(const ZPoly& g, const std::vector<IsolatingInterval>& groots, const IsolatingInterval& Ia,
                 const IsolatingInterval& Ib) {
  for (IsolatingInterval Ig : groots) {
    // Decide membership of the root of g in a closed interval whose
    // endpoints are not roots of g unless the interval is exact.
    auto inside = [&](const IsolatingInterval& J) {
      if (J.exact()) return sign_at(g, J.lo) == 0;
      for (;;) {
        if (Ig.hi < J.lo || J.hi < Ig.lo) return false;
        if (J.lo <= Ig.lo && Ig.hi <= J.hi) return true;
        if (!bisect_root(g, Ig)) return J.lo <= Ig.lo && Ig.lo <= J.hi;
      }
    };
    if (inside(Ia) && inside(Ib)) return true;
  }
  return false;
}

}  // namespace

std::vector<CertifiedBox> solve_bivariate(const MPoly& A0, const MPoly& D0, const CountingOptions& opt) {
  require_vars(A0, {Var::p, Var::q}, "solve_bivariate");
  require_vars(D0, {Var::p, Var::q}, "solve_bivariate");
  if (A0.is_zero() || D0.is_zero()) throw Error(ErrorCode::infinite_solutions, "solve_bivariate: zero equation");
  // Factors of constant sign on the open orthant do not change the solutions.
  MPoly A = strip_monomial(A0.primitive()), D = strip_monomial(D0.primitive());
  std::vector<CertifiedBox> out;
  ZPoly Rp, Rq;
  for (;;) {
    if (sign_definite_on_orthant(A) || sign_definite_on_orthant(D)) return out;
    Rp = subresultant_chain<ZPoly>(to_zpoly2(A), to_zpoly2(D)).res;
    Rq = subresultant_chain<ZPoly>(to_zpoly2(swap_pq(A)), to_zpoly2(swap_pq(D))).res;
    if (!Rp.is_zero() && !Rq.is_zero()) break;
    if (!cancel_definite_common_factor(A, D, Rp.is_zero() ? Var::q : Var::p))
      throw Error(ErrorCode::infinite_solutions, "solve_bivariate: the equations share a curve component");
  }
  if (Rp.deg() <= 0 || Rq.deg() <= 0) return out;
  Rp = squarefree(Rp);
  Rq = squarefree(Rq);
  auto rp = isolate_positive_roots(Rp), rq = isolate_positive_roots(Rq);
  if (rp.empty() || rq.empty()) return out;
  ZPoly g = gcd(Rp, Rq);
  std::vector<IsolatingInterval> groots;
  if (g.deg() > 0) groots = isolate_positive_roots(g);
  PlanarSystem sys(A, D);
  for (const auto& Ip : rp)
    for (const auto& Iq : rq) {
      if (!groots.empty() && shared_root(g, groots, Ip, Iq)) continue;  // a point on p = q
      PlanarLocus L{Rp, Rq, Ip, Iq};
      BoxStatus st = BoxStatus::undecided;
      for (int depth = 0; depth <= opt.box_depth; ++depth) {
        if (L.Ip.exact() || L.Iq.exact()) {
          st = exact_cell(sys, L) ? BoxStatus::certified_unique : BoxStatus::excluded;
          break;
        }
        RBox X = L.box();
        if (!eval_positive(A, X).contains_zero() || !eval_positive(D, X).contains_zero()) {
          st = BoxStatus::excluded;
          break;
        }
        int k = krawczyk(sys, X);
        if (k >= 0) {
          st = k ? BoxStatus::certified_unique : BoxStatus::excluded;
          break;
        }
        L.shrink();
      }
      if (st == BoxStatus::undecided)
        throw Error(ErrorCode::degenerate_solution, "solve_bivariate: a solution could not be certified near p=" +
                                                        decimal(L.Ip.lo, 6) + ", q=" + decimal(L.Iq.lo, 6));
      if (st == BoxStatus::certified_unique) {
        CertifiedBox b;
        b.p = {L.Ip.lo, L.Ip.hi};
        b.q = {L.Iq.lo, L.Iq.hi};
        b.status = st;
        b.locus = L;
        out.push_back(b);
      }
    }
  return out;
}

TemplateCount count_template(const MSRSModel& m, const TemplateCurve& t, const Rat& v, const CountingOptions& opt) {
  ReducedNonDiagonal r = nondiagonal_equilibrium(m, t.i);
  TemplateCount tc;
  tc.i = t.i;
  MPoly A = at_sigma(t.NF1, v);
  MPoly D = t.counting_uses_C ? t.C : at_sigma(t.Delta, v);
  auto boxes = solve_bivariate(A, D, opt);
  ClearedFraction F1 = clear_denominators(r.F1), F2 = clear_denominators(r.F2);
  auto conds = stability_conditions(m.n, t.i);
  std::map<int, RatFunc> G;
  for (const auto& c : conds) G[c.k] = at_sigma(r.G(c.k), v);
  for (const auto& b : boxes) {
    if (b.locus.Ip.exact() && b.locus.Iq.exact() && b.p.lo == b.q.lo)
      throw Error(ErrorCode::internal, "count_template: solution on the diagonal");
    bool valid = true;
    for (const ClearedFraction* F : {&F1, &F2})
      if (!F->den_positive && sign_at_root(RatFunc(at_sigma(F->den, v)), b.locus, opt.sign_steps) == Sign::zero)
        valid = false;
    if (!valid) continue;
    ++tc.e_raw;
    bool stable = true;
    for (const auto& c : conds) {
      Sign s = sign_at_root(G.at(c.k), b.locus, opt.sign_steps);
      if (s == Sign::zero) throw Error(ErrorCode::degenerate_solution, "template equilibrium with a zero eigenvalue");
      if (static_cast<int>(s) != c.sign) stable = false;
    }
    if (stable) ++tc.s_raw;
  }
  return tc;
}

Counts equilibrium_counting(const MSRSModel& m, const std::vector<TemplateCurve>& ts, const Rat& v,
                            const CountingOptions& opt) {
  std::vector<TemplateCount> tcs(ts.size() + 1);
  std::vector<std::function<void()>> tasks;
  tasks.push_back([&] { tcs[0] = count_diagonal(m, v, opt); });
  for (size_t j = 0; j < ts.size(); ++j) tasks.push_back([&, j] { tcs[j + 1] = count_template(m, ts[j], v, opt); });
  try {
    run_tasks(tasks, opt.jobs);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (sigma=" + rat_str(v) + ")");
  }
  Counts c;
  c.e = tcs[0].e_raw;
  c.s = tcs[0].s_raw;
  for (size_t j = 1; j < tcs.size(); ++j) {
    int i = tcs[j].i;
    long w = binomial(m.n, i).get_si();
    if (2 * i == m.n) {
      if (tcs[j].e_raw % 2 || tcs[j].s_raw % 2)
        throw Error(ErrorCode::internal, "symmetric template count is odd (sigma=" + rat_str(v) + ")");
      c.e += w * tcs[j].e_raw / 2;
      c.s += w * tcs[j].s_raw / 2;
    } else {
      c.e += w * tcs[j].e_raw;
      c.s += w * tcs[j].s_raw;
    }
  }
  return c;
}

Counts equilibrium_counting(const MSRSModel& m, const Rat& v, const CountingOptions& opt) {
  std::vector<TemplateCurve> ts;
  for (int i = 1; 2 * i <= m.n; ++i) ts.push_back(template_curve(m, i));
  return equilibrium_counting(m, ts, v, opt);
}

}  // namespace msrs
