// Critical polynomial B(sigma): every sigma > 0 at which the number of
// (stable) equilibria can change is a root of B.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "msrs/core.hpp"
#include "msrs/model.hpp"
#include "msrs/reduction.hpp"
#include "msrs/upoly.hpp"

namespace msrs {

// lc_v(f) lc_v(g) Res_v(f*, g*) made squarefree, f* and g* being f and g with
// their common factor in v removed when the plain resultant vanishes.
MPoly project_pair(const MPoly& f, const MPoly& g, Var v);

// f divided by its largest monomial factor.
MPoly strip_monomial(const MPoly& f);

// Common factor of f and g involving v, found from the last nonzero
// subresultant in v; 1 when Res_v(f, g) is not identically zero.
MPoly common_factor(const MPoly& f, const MPoly& g, Var v);

// When f and g share a factor in v that has constant sign on the open
// positive orthant, divides both by it and returns true.
bool cancel_definite_common_factor(MPoly& f, MPoly& g, Var v);

// Integer polynomial in (p, q) as coefficients of q^k that are polynomials
// in p. f must have integer coefficients.
ZPoly2 to_zpoly2(const MPoly& f);
MPoly from_zpoly2(const ZPoly2& f);

// Diagonal data: N_F = sigma * a(q) + b(q); Gt[k](q) is num(G_k) along the
// curve sigma = -b/a, times a power of a.
struct DiagonalCurve {
  MPoly NF, a, b;
  std::map<int, MPoly> Gnum;  // num(G_k) in (sigma, q)
  std::map<int, ZPoly> Gt;    // in q
};

// Template data: num(F1) = sigma a1 + a0, num(F2) = sigma b1 + b0,
// C = (a1 b0 - a0 b1) / (p - q) is free of sigma. Gt[k](p, q) is num(G_k)
// along sigma = -a0/a1, times a power of a1. Only G_k that are eigenvalues
// for this (n, i) appear.
struct TemplateCurve {
  int i = 1;
  MPoly NF1, NF2, a1, a0, b1, b0, C, Delta;
  std::map<int, MPoly> Gnum;
  std::map<int, MPoly> Gt;
  // a1 has no positive root in p, so F1 = F2 = 0 iff num(F1) = C = 0.
  bool counting_uses_C = false;
};

DiagonalCurve diagonal_curve(const MSRSModel& m);
TemplateCurve template_curve(const MSRSModel& m, int i);

// One projection: sigma values of the real points of a template curve where
// G_k vanishes. Kept so boundaries can be traced back to curve points.
struct Projection {
  int i = 0;  // 0 = diagonal
  int k = 0;  // eigenvalue expression index; 0 for strict boundary factors
  std::string kind;  // "diagonal", "template", "fallback", "boundary"
  ZPoly factor;      // squarefree, primitive, in sigma; 1 when skipped
  // Template parametrization: over a root alpha of Ra, q = -s10/s11.
  ZPoly Ra, s11, s10;
  bool fallback_has_positive_roots = false;
  bool sign_definite = false;  // Gt never vanishes on the open orthant
};

struct CriticalPolynomial {
  ZPoly B;                              // squarefree, primitive, lc > 0
  std::vector<ZPoly> basis;             // pairwise coprime, product = B
  std::vector<Projection> projections;  // diagonal first, then by (i, k)
  // basis index -> projections whose factor shares a root with it. Boundary
  // projections are always computed and listed here but enter B only in
  // strict mode.
  std::vector<std::vector<size_t>> provenance;
  bool escape_excluded = true;
  std::vector<std::string> notes;
};

struct EliminationOptions {
  bool strict = false;
  int jobs = 1;
  // Extra factors multiplied into B, for fault-injection tests.
  std::vector<ZPoly> inject;
};

CriticalPolynomial critical_polynomial(const MSRSModel& m, const EliminationOptions& opt = {});

// Coprime squarefree basis of squarefree inputs; constants dropped.
std::vector<ZPoly> coprime_basis(const std::vector<ZPoly>& polys);

// All coefficients of one strict sign: never zero on the open orthant.
bool sign_definite_on_orthant(const MPoly& f);

// Top-form test that no branch of the template system escapes to infinity
// while sigma stays bounded.
bool template_escape_excluded(const TemplateCurve& t);
bool diagonal_escape_excluded(const DiagonalCurve& d);

}  // namespace msrs
