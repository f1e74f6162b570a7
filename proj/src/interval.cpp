#include "msrs/interval.hpp"

#include <vector>

namespace msrs {

RInterval eval_positive(const MPoly& f, const RBox& box) {
  // Power tables per variable, only for variables that occur.
  std::array<std::vector<Rat>, kNumVars> plo, phi;
  std::array<uint32_t, kNumVars> maxdeg{};
  for (const auto& t : f.terms())
    for (int v = 0; v < kNumVars; ++v) maxdeg[v] = std::max(maxdeg[v], t.first[v]);
  for (int v = 0; v < kNumVars; ++v) {
    if (maxdeg[v] == 0) continue;
    if (box[v].lo < 0) throw Error(ErrorCode::internal, "eval_positive: box leaves the orthant");
    plo[v].assign(maxdeg[v] + 1, Rat(1));
    phi[v].assign(maxdeg[v] + 1, Rat(1));
    for (uint32_t e = 1; e <= maxdeg[v]; ++e) {
      plo[v][e] = plo[v][e - 1] * box[v].lo;
      phi[v][e] = phi[v][e - 1] * box[v].hi;
    }
  }
  Rat lo = 0, hi = 0;
  for (const auto& [e, c] : f.terms()) {
    Rat a = c, b = c;
    for (int v = 0; v < kNumVars; ++v) {
      if (!e[v]) continue;
      a *= plo[v][e[v]];
      b *= phi[v][e[v]];
    }
    if (c > 0) {
      lo += a;
      hi += b;
    } else {
      lo += b;
      hi += a;
    }
  }
  return {lo, hi};
}

RInterval eval_positive(const ZPoly& f, const RInterval& x) {
  if (x.lo < 0) throw Error(ErrorCode::internal, "eval_positive: interval leaves the half line");
  Rat lo = 0, hi = 0, plo = 1, phi = 1;
  for (size_t k = 0; k < f.c.size(); ++k) {
    if (k) {
      plo *= x.lo;
      phi *= x.hi;
    }
    if (f.c[k] == 0) continue;
    if (f.c[k] > 0) {
      lo += f.c[k] * plo;
      hi += f.c[k] * phi;
    } else {
      lo += f.c[k] * phi;
      hi += f.c[k] * plo;
    }
  }
  return {lo, hi};
}

}  // namespace msrs
