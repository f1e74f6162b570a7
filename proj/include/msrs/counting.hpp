// Equilibrium and stable-equilibrium counts at a fixed rational sigma.
#pragma once

#include <optional>
#include <vector>

#include "msrs/core.hpp"
#include "msrs/elimination.hpp"
#include "msrs/interval.hpp"
#include "msrs/model.hpp"
#include "msrs/realroots.hpp"

namespace msrs {

enum class Sign { negative = -1, zero = 0, positive = 1 };

// An algebraic point (p, q) given as an isolating interval of a root of
// Rp(p) and one of Rq(q). Rp and Rq are squarefree.
struct PlanarLocus {
  ZPoly Rp, Rq;
  IsolatingInterval Ip, Iq;
  RBox box() const;
  // Halve both intervals.
  void shrink();
};

enum class BoxStatus { certified_unique, excluded, undecided };

struct CertifiedBox {
  RInterval p, q;
  BoxStatus status = BoxStatus::undecided;
  PlanarLocus locus;
};

struct TemplateCount {
  int i = 0;
  long e_raw = 0, s_raw = 0;
};

struct CountingOptions {
  int sign_steps = 64;
  int box_depth = 80;
  int jobs = 1;
};

// Sign of G at a root of the univariate f (in v). G may only depend on v.
Sign sign_at_root(const RatFunc& G, const ZPoly& f, Var v, IsolatingInterval I, int max_steps = 64);
// Sign of G at the point of a certified locus. G may depend on p and q.
// Zero is never confirmed here: an undetermined sign raises Undecidable.
Sign sign_at_root(const RatFunc& G, PlanarLocus L, int max_steps = 64);

TemplateCount count_diagonal(const MSRSModel& m, const Rat& v, const CountingOptions& opt = {});

// Positive solutions of A = Delta = 0 in (p, q) off the diagonal p = q. A and
// Delta must be free of sigma.
std::vector<CertifiedBox> solve_bivariate(const MPoly& A, const MPoly& Delta, const CountingOptions& opt = {});

TemplateCount count_template(const MSRSModel& m, const TemplateCurve& t, const Rat& v,
                             const CountingOptions& opt = {});

struct Counts {
  long e = 0, s = 0;
  bool operator==(const Counts& o) const { return e == o.e && s == o.s; }
  bool operator!=(const Counts& o) const { return !(*this == o); }
};

Counts equilibrium_counting(const MSRSModel& m, const Rat& v, const CountingOptions& opt = {});
// Reuses precomputed template curves.
Counts equilibrium_counting(const MSRSModel& m, const std::vector<TemplateCurve>& ts, const Rat& v,
                            const CountingOptions& opt = {});

}  // namespace msrs
