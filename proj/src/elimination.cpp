#include "msrs/elimination.hpp"

#include <algorithm>
#include <functional>

#include "msrs/modular.hpp"
#include "msrs/parallel.hpp"
#include "msrs/realroots.hpp"

namespace msrs {

namespace {

const MPoly kP = MPoly::variable(Var::p);
const MPoly kQ = MPoly::variable(Var::q);
const MPoly kSigma = MPoly::variable(Var::sigma);

Int as_int(const Rat& r) {
  if (r.get_den() != 1) throw Error(ErrorCode::internal, "expected an integer coefficient, got " + rat_str(r));
  return r.get_num();
}

// sum_j g_j sigma^j with sigma = -num/den, times den^deg.
MPoly along_curve(const MPoly& g, const MPoly& num, const MPoly& den) {
  std::vector<MPoly> cs = g.coeffs_in(Var::sigma);
  size_t d = cs.size() - 1;
  MPoly out;
  MPoly neg = -num;
  for (size_t j = 0; j < cs.size(); ++j) {
    if (cs[j].is_zero()) continue;
    out += cs[j] * neg.pow(static_cast<unsigned>(j)) * den.pow(static_cast<unsigned>(d - j));
  }
  return out.is_zero() ? out : out.primitive();
}

void split_sigma_linear(const MPoly& f, MPoly& s1, MPoly& s0, const char* what) {
  std::vector<MPoly> cs = f.coeffs_in(Var::sigma);
  if (cs.size() != 2 || cs[1].is_zero())
    throw Error(ErrorCode::internal, std::string(what) + " is not linear in sigma");
  s0 = cs[0];
  s1 = cs[1];
}

ZPoly sigma_part(const MPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::identically_zero, "projection vanished identically");
  for (Var v : f.variables())
    if (v != Var::sigma) throw Error(ErrorCode::internal, "projection still depends on " + std::string(var_name(v)));
  if (f.is_constant()) return ZPoly(Int(1));
  return squarefree(zpoly_from_mpoly(f, Var::sigma));
}

bool has_positive_root(const ZPoly& f) {
  if (f.deg() <= 0) return false;
  ZPoly g = shift_down(f, x_valuation(f));
  return g.deg() > 0 && sign_variations(g) > 0;
}

// Homogeneous top-degree part of f(p, q), dehomogenized at q = 1, and its
// value in the direction (1, 0).
struct TopForm {
  int deg = -1;
  ZPoly at_t;  // T(t, 1)
  Int at_inf;  // T(1, 0)
};

TopForm top_form(const MPoly& f) {
  TopForm t;
  if (f.is_zero()) return t;
  t.deg = static_cast<int>(f.total_degree());
  std::vector<Int> c(t.deg + 1, Int(0));
  for (const auto& [e, coef] : f.terms()) {
    int dp = static_cast<int>(e[static_cast<int>(Var::p)]), dq = static_cast<int>(e[static_cast<int>(Var::q)]);
    if (dp + dq != t.deg) continue;
    c[dp] = as_int(coef);
    if (dq == 0) t.at_inf = c[dp];
  }
  t.at_t = ZPoly(c);
  return t;
}

bool has_root_in_closed_positive(const ZPoly& f) {
  if (f.is_zero()) return true;
  if (f.c[0] == 0) return true;
  return !isolate_positive_roots(f).empty();
}

}  // namespace

ZPoly2 to_zpoly2(const MPoly& f) {
  ZPoly2 out(f.degree(Var::q) + 1);
  std::vector<std::vector<Int>> cs(out.size());
  for (const auto& [e, c] : f.terms()) {
    for (int v = 0; v < kNumVars; ++v)
      if (e[v] && v != static_cast<int>(Var::p) && v != static_cast<int>(Var::q))
        throw Error(ErrorCode::internal, "to_zpoly2: unexpected variable");
    size_t dq = e[static_cast<int>(Var::q)], dp = e[static_cast<int>(Var::p)];
    if (cs[dq].size() <= dp) cs[dq].resize(dp + 1, Int(0));
    cs[dq][dp] = as_int(c);
  }
  for (size_t k = 0; k < out.size(); ++k) out[k] = ZPoly(cs[k]);
  rtrim(out);
  return out;
}

MPoly from_zpoly2(const ZPoly2& f) {
  std::vector<MPoly> cs;
  for (const auto& c : f) cs.push_back(to_mpoly(c, Var::p));
  return MPoly::from_coeffs(Var::q, cs);
}

bool sign_definite_on_orthant(const MPoly& f) {
  if (f.is_zero()) return false;
  int s = sgn(f.terms().front().second);
  for (const auto& t : f.terms())
    if (sgn(t.second) != s) return false;
  return true;
}

MPoly strip_monomial(const MPoly& f) {
  if (f.is_zero() || f.terms().empty()) return f;
  Exps lo = f.terms().front().first;
  for (const auto& t : f.terms())
    for (int w = 0; w < kNumVars; ++w) lo[w] = std::min(lo[w], t.first[w]);
  MPoly mono(1);
  bool any = false;
  for (int w = 0; w < kNumVars; ++w)
    if (lo[w]) {
      mono = mono * MPoly::variable(static_cast<Var>(w)).pow(lo[w]);
      any = true;
    }
  return any ? exact_div(f, mono) : f;
}

MPoly common_factor(const MPoly& f, const MPoly& g, Var v) {
  if (f.degree(v) == 0 || g.degree(v) == 0) return MPoly(1);
  auto chain = subresultant_chain<MPoly>(f.coeffs_in(v), g.coeffs_in(v), true);
  if (!chain.res.is_zero()) return MPoly(1);
  while (!chain.prs.empty() && chain.prs.back().empty()) chain.prs.pop_back();
  RPoly<MPoly> h = chain.prs.back();
  MPoly hp = MPoly::from_coeffs(v, h);
  // Remove the content in v when the coefficients are univariate.
  std::vector<Var> vs;
  for (const auto& c : h)
    for (Var w : c.variables())
      if (std::find(vs.begin(), vs.end(), w) == vs.end()) vs.push_back(w);
  if (vs.size() == 1) {
    MPoly cont;
    for (const auto& c : h) cont = cont.is_zero() ? c : univariate_gcd(cont, c, vs[0]);
    if (!cont.is_constant()) hp = exact_div(hp, cont);
  }
  return hp.primitive();
}

bool cancel_definite_common_factor(MPoly& f, MPoly& g, Var v) {
  MPoly h = common_factor(f, g, v);
  if (h.is_constant() || !sign_definite_on_orthant(h)) return false;
  MPoly fq, gq;
  if (!divides(h, f, &fq) || !divides(h, g, &gq)) return false;
  f = fq;
  g = gq;
  return true;
}

MPoly project_pair(const MPoly& f0, const MPoly& g0, Var v) {
  if (f0.degree(v) == 0 || g0.degree(v) == 0)
    throw Error(ErrorCode::invalid_argument, "project_pair needs positive degree in the eliminated variable");
  MPoly f = f0, g = g0;
  MPoly R;
  for (;;) {
    if (f.degree(v) == 0 || g.degree(v) == 0) {
      // One side became free of v: the projection is that polynomial.
      MPoly rest = f.degree(v) == 0 ? f : g;
      return rest.is_constant() ? MPoly(1) : rest.primitive();
    }
    R = resultant(f, g, v);
    if (!R.is_zero()) break;
    if (cancel_definite_common_factor(f, g, v)) continue;
    MPoly hp = common_factor(f, g, v);
    for (Var w : hp.variables())
      if (w != v) throw Error(ErrorCode::identically_zero, "project_pair: inputs share a curve component");
    MPoly fq, gq;
    if (hp.is_constant() || !divides(hp, f, &fq) || !divides(hp, g, &gq))
      throw Error(ErrorCode::identically_zero, "project_pair: common factor could not be removed");
    f = fq;
    g = gq;
  }
  MPoly out = f.coeffs_in(v).back() * g.coeffs_in(v).back() * R;
  if (out.is_constant()) return MPoly(1);
  std::vector<Var> vs = out.variables();
  if (vs.size() == 1) return squarefree_part(out, vs[0]);
  return out.primitive();
}

DiagonalCurve diagonal_curve(const MSRSModel& m) {
  ReducedDiagonal r = diagonal_equilibrium(m);
  DiagonalCurve d;
  d.NF = strip_monomial(clear_denominators(r.F).num.primitive());
  split_sigma_linear(d.NF, d.a, d.b, "num(F)");
  for (int k : {1, 2}) {
    MPoly g = clear_denominators(k == 1 ? r.G1 : r.G2).num;
    d.Gnum[k] = g.is_zero() ? g : strip_monomial(g.primitive());
    MPoly gt = along_curve(d.Gnum[k], d.b, d.a);
    d.Gt[k] = gt.is_zero() ? ZPoly() : zpoly_from_mpoly(strip_monomial(gt), Var::q);
  }
  return d;
}

TemplateCurve template_curve(const MSRSModel& m, int i) {
  ReducedNonDiagonal r = nondiagonal_equilibrium(m, i);
  TemplateCurve t;
  t.i = i;
  // Monomial factors have no zeros on the open orthant.
  t.NF1 = strip_monomial(clear_denominators(r.F1).num.primitive());
  t.NF2 = strip_monomial(clear_denominators(r.F2).num.primitive());
  split_sigma_linear(t.NF1, t.a1, t.a0, "num(F1)");
  split_sigma_linear(t.NF2, t.b1, t.b0, "num(F2)");
  MPoly full = t.a1 * t.b0 - t.a0 * t.b1;
  t.C = exact_div(full, kP - kQ);
  t.C = t.C.is_zero() ? t.C : strip_monomial(t.C.primitive());
  t.Delta = difference_poly(r.F1, r.F2);
  t.Delta = t.Delta.is_zero() ? t.Delta : t.Delta.primitive();
  std::vector<int> ks;
  if (m.n - i - 1 >= 1) ks.push_back(1);
  if (i - 1 >= 1) ks.push_back(2);
  ks.push_back(3);
  ks.push_back(4);
  for (int k : ks) {
    MPoly g = clear_denominators(r.G(k)).num;
    t.Gnum[k] = g.is_zero() ? g : strip_monomial(g.primitive());
    t.Gt[k] = strip_monomial(along_curve(t.Gnum[k], t.a0, t.a1));
  }
  t.counting_uses_C = false;
  if (t.a1.is_constant()) {
    t.counting_uses_C = true;
  } else if (t.a1.is_univariate_in(Var::p)) {
    t.counting_uses_C = isolate_positive_roots(zpoly_from_mpoly(t.a1, Var::p)).empty();
  }
  return t;
}

namespace {

// sigma = -s0/s1 with s1 a nonzero constant and s0 sign-definite holding a
// pure power of v: then |sigma| >= c v^j on the orthant.
bool dominates(const MPoly& s1, const MPoly& s0, Var v) {
  if (!s1.is_constant() || s1.is_zero() || !sign_definite_on_orthant(s0)) return false;
  for (const auto& [e, c] : s0.terms()) {
    (void)c;
    bool pure = e[static_cast<int>(v)] > 0;
    for (int w = 0; w < kNumVars; ++w)
      if (w != static_cast<int>(v) && e[w]) pure = false;
    if (pure) return true;
  }
  return false;
}

}  // namespace

bool template_escape_excluded(const TemplateCurve& t) {
  if (dominates(t.a1, t.a0, Var::p) && dominates(t.b1, t.b0, Var::q)) return true;
  TopForm A0 = top_form(t.a0), A1 = top_form(t.a1), B0 = top_form(t.b0), B1 = top_form(t.b1);
  bool a_ok = A0.deg > A1.deg, b_ok = B0.deg > B1.deg;
  if (!a_ok && !b_ok) return false;
  if (a_ok && b_ok) {
    if (A0.at_inf == 0 && B0.at_inf == 0) return false;
    return !has_root_in_closed_positive(gcd(A0.at_t, B0.at_t));
  }
  const TopForm& T = a_ok ? A0 : B0;
  return T.at_inf != 0 && !has_root_in_closed_positive(T.at_t);
}

bool diagonal_escape_excluded(const DiagonalCurve& d) { return d.b.degree(Var::q) > d.a.degree(Var::q); }

std::vector<ZPoly> coprime_basis(const std::vector<ZPoly>& polys) {
  std::vector<ZPoly> basis;
  for (ZPoly f : polys) {
    if (f.deg() <= 0) continue;
    f = squarefree(f);
    std::vector<ZPoly> next;
    for (const auto& b : basis) {
      ZPoly g = gcd(f, b);
      if (g.deg() <= 0) {
        next.push_back(b);
        continue;
      }
      next.push_back(g);
      ZPoly rest = divexact(b, g);
      if (rest.deg() > 0) next.push_back(primitive(rest));
      f = primitive(divexact(f, g));
    }
    if (f.deg() > 0) next.push_back(f);
    basis = std::move(next);
  }
  std::sort(basis.begin(), basis.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int k = a.deg(); k >= 0; --k)
      if (a.c[k] != b.c[k]) return a.c[k] < b.c[k];
    return false;
  });
  return basis;
}

namespace {

void diagonal_projection(const DiagonalCurve& d, int k, Projection& out) {
  out.i = 0;
  out.k = k;
  out.kind = "diagonal";
  const ZPoly& gt = d.Gt.at(k);
  if (gt.is_zero()) throw Error(ErrorCode::identically_zero, "diagonal: G" + std::to_string(k) + " vanishes on the curve");
  if (sign_definite_on_orthant(to_mpoly(gt, Var::q))) {
    out.sign_definite = true;
    out.factor = ZPoly(Int(1));
    return;
  }
  out.factor = sigma_part(project_pair(d.NF, d.Gnum.at(k), Var::q));
}

void template_projection(const TemplateCurve& t, int k, Projection& out) {
  out.i = t.i;
  out.k = k;
  out.kind = "template";
  out.factor = ZPoly(Int(1));
  const MPoly& gt = t.Gt.at(k);
  if (gt.is_zero())
    throw Error(ErrorCode::identically_zero,
                "template i=" + std::to_string(t.i) + ": G" + std::to_string(k) + " vanishes on the curve");
  if (sign_definite_on_orthant(gt)) {
    out.sign_definite = true;
    return;
  }
  MPoly Cm = t.C, Gm = gt;
  ZPoly2 Cz = to_zpoly2(Cm), Gz = to_zpoly2(Gm);
  auto chain = subresultant_chain<ZPoly>(Cz, Gz, true);
  while (chain.res.is_zero()) {
    // A shared factor of constant sign carries no positive points.
    if (!cancel_definite_common_factor(Cm, Gm, Var::q))
      throw Error(ErrorCode::identically_zero,
                  "template i=" + std::to_string(t.i) + ": C and G" + std::to_string(k) + " share a component");
    if (sign_definite_on_orthant(Gm)) {
      out.sign_definite = true;
      return;
    }
    Cz = to_zpoly2(Cm);
    Gz = to_zpoly2(Gm);
    chain = subresultant_chain<ZPoly>(Cz, Gz, true);
  }
  ZPoly s11, s10;
  for (const auto& e : chain.prs)
    if (rdeg(e) == 1) {
      s11 = e[1];
      s10 = e[0];
    }
  ZPoly rest = squarefree(chain.res);
  rest = shift_down(rest, x_valuation(rest));
  ZPoly Rb(Int(1));
  for (const ZPoly* h : {&s11, &Cz.back(), &Gz.back()}) {
    ZPoly g = h->is_zero() ? rest : gcd(rest, *h);
    if (g.deg() > 0) {
      Rb = Rb * g;
      rest = primitive(divexact(rest, g));
    }
  }
  if (t.a1.is_univariate_in(Var::p) && !t.a1.is_constant()) {
    ZPoly g = gcd(rest, zpoly_from_mpoly(t.a1, Var::p));
    if (g.deg() > 0) rest = primitive(divexact(rest, g));
  }
  out.Ra = rest;
  out.s11 = s11;
  out.s10 = s10;
  std::vector<ZPoly> parts;
  if (has_positive_root(rest)) parts.push_back(parametrized_norm(rest, s11, s10, to_zpoly2(t.a1), to_zpoly2(t.a0)));
  if (has_positive_root(Rb)) {
    out.fallback_has_positive_roots = true;
    out.kind = "template+fallback";
    MPoly T = resultant(t.C, t.NF1, Var::q);
    // Drop fibres of Rb on which T vanishes for every sigma. The other roots
    // on such a fibre survive in the quotient, possibly with an extra factor.
    for (;;) {
      ZPoly g = Rb;
      for (const auto& c : T.coeffs_in(Var::sigma))
        if (!c.is_zero()) g = gcd(g, zpoly_from_mpoly(c, Var::p));
      if (g.deg() <= 0) break;
      T = exact_div(T, to_mpoly(g, Var::p));
    }
    MPoly F = resultant(to_mpoly(Rb, Var::p), T, Var::p);
    parts.push_back(sigma_part(F));
  }
  ZPoly f(Int(1));
  for (const auto& x : parts) f = f * x;
  out.factor = f.deg() > 0 ? squarefree(f) : ZPoly(Int(1));
}

void boundary_projection(const MPoly& A, const MPoly& Bq, Var zero_var, Var elim, int i, Projection& out) {
  out.i = i;
  out.k = 0;
  out.kind = "boundary";
  MPoly a = substitute(A, {{zero_var, MPoly(0)}});
  MPoly b = substitute(Bq, {{zero_var, MPoly(0)}});
  out.factor = ZPoly(Int(1));
  if (b.is_zero() || a.is_zero()) return;
  if (b.degree(elim) == 0 || a.degree(elim) == 0) {
    MPoly s = a.degree(elim) == 0 ? a : b;
    if (s.has_var(Var::sigma) && s.variables().size() == 1) out.factor = sigma_part(s);
    return;
  }
  out.factor = sigma_part(project_pair(a, b, elim));
}

}  // namespace

CriticalPolynomial critical_polynomial(const MSRSModel& m, const EliminationOptions& opt) {
  CriticalPolynomial cp;
  DiagonalCurve d = diagonal_curve(m);
  std::vector<TemplateCurve> ts;
  for (int i = 1; i <= m.n / 2; ++i) ts.push_back(template_curve(m, i));

  std::vector<Projection> projs;
  std::vector<std::function<void()>> tasks;
  // Slots: two diagonal, one per (i, k), then 1 + 2 * |ts| boundary.
  size_t nslots = 2 + 1 + 2 * ts.size();
  for (const auto& t : ts) nslots += t.Gt.size();
  projs.resize(nslots);
  size_t slot = 0;
  for (int k : {1, 2}) {
    Projection* out = &projs[slot++];
    tasks.push_back([&d, k, out] { diagonal_projection(d, k, *out); });
  }
  for (const auto& t : ts)
    for (const auto& kv : t.Gt) {
      Projection* out = &projs[slot++];
      int k = kv.first;
      const TemplateCurve* tp = &t;
      tasks.push_back([tp, k, out] { template_projection(*tp, k, *out); });
    }
  Projection* bout = &projs[slot++];
  tasks.push_back([&d, out = bout] {
    out->i = 0;
    out->kind = "boundary";
    MPoly s = substitute(d.NF, {{Var::q, MPoly(0)}});
    out->factor = s.has_var(Var::sigma) ? sigma_part(s) : ZPoly(Int(1));
  });
  for (const auto& t : ts) {
    Projection* o1 = &projs[slot++];
    Projection* o2 = &projs[slot++];
    const TemplateCurve* tp = &t;
    tasks.push_back([tp, o1] { boundary_projection(tp->C, tp->NF1, Var::p, Var::q, tp->i, *o1); });
    tasks.push_back([tp, o2] { boundary_projection(tp->C, tp->NF1, Var::q, Var::p, tp->i, *o2); });
  }
  run_tasks(tasks, opt.jobs);

  for (const auto& inj : opt.inject) {
    Projection p;
    p.kind = "injected";
    p.factor = squarefree(inj);
    projs.push_back(p);
  }

  cp.escape_excluded = diagonal_escape_excluded(d);
  if (!cp.escape_excluded) cp.notes.push_back("diagonal: branches escaping to infinity are not excluded");
  for (const auto& t : ts)
    if (!template_escape_excluded(t)) {
      cp.escape_excluded = false;
      cp.notes.push_back("template i=" + std::to_string(t.i) + ": branches escaping to infinity are not excluded");
    }
  for (const auto& p : projs)
    if (p.fallback_has_positive_roots)
      cp.notes.push_back("template i=" + std::to_string(p.i) + ", G" + std::to_string(p.k) +
                         ": singular fibres handled by the unparametrized fallback");

  std::vector<ZPoly> fs;
  for (const auto& p : projs)
    if (opt.strict || p.kind != "boundary") fs.push_back(p.factor);
  cp.basis = coprime_basis(fs);
  cp.B = ZPoly(Int(1));
  for (const auto& b : cp.basis) cp.B = cp.B * b;
  cp.B = primitive(cp.B);
  cp.provenance.resize(cp.basis.size());
  for (size_t j = 0; j < cp.basis.size(); ++j)
    for (size_t k = 0; k < projs.size(); ++k)
      if (projs[k].factor.deg() > 0 && gcd(cp.basis[j], projs[k].factor).deg() > 0) cp.provenance[j].push_back(k);
  cp.projections = std::move(projs);
  return cp;
}

}  // namespace msrs
