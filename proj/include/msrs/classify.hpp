// Full classification: critical polynomial, isolation, sample counts and
// removal of boundaries across which nothing changes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msrs/counting.hpp"
#include "msrs/elimination.hpp"
#include "msrs/realroots.hpp"

namespace msrs {

enum class BoundaryFlag { verified_change, pruned, kept_unverified };
const char* flag_name(BoundaryFlag f);

struct Candidate {
  IsolatingInterval iv;  // refined to the requested width
  size_t factor = 0;     // index into the basis of B
  BoundaryFlag flag = BoundaryFlag::verified_change;
  std::optional<Counts> at_root;
};

struct PhaseTiming {
  double reduction = 0, elimination = 0, isolation = 0, counting = 0;
};

struct ClassificationResult {
  CriticalPolynomial cp;
  std::vector<Candidate> candidates;  // every positive root of B, increasing
  std::vector<size_t> kept;           // candidate indices of the boundaries
  std::vector<Counts> bands;          // kept.size() + 1 entries
  std::vector<Rat> samples;           // one per gap between candidates
  std::vector<Counts> sample_counts;
  std::vector<std::string> notes;
  PhaseTiming timing;

  std::vector<IsolatingInterval> boundaries() const;
  bool all_verified() const;
};

struct ClassifyOptions {
  Rat refine_width = Rat(1, 1000000000);
  bool strict = false;
  int jobs = 1;
  // Refinement steps allowed per curve point in recount_at_root; 0 makes
  // every recount Unverified.
  int recount_budget = 400;
  // Use the second simplest rational of each gap as sample.
  bool alternate_samples = false;
  std::vector<ZPoly> inject;
  CountingOptions counting;
};

ClassificationResult classify(const MSRSModel& m, const ClassifyOptions& opt = {});

struct RecountContext {
  const MSRSModel& m;
  const CriticalPolynomial& cp;
  const DiagonalCurve& d;
  const std::vector<TemplateCurve>& ts;
};

// Counts at the root of cp.basis[factor] isolated by I, given the equal
// counts on both sides. Rational roots are counted directly. Irrational
// roots are accepted when no real positive curve point over the root makes
// an eigenvalue expression vanish, so every equilibrium there is
// nondegenerate. nullopt means Unverified.
std::optional<Counts> recount_at_root(const RecountContext& ctx, size_t factor, IsolatingInterval I,
                                      const Counts& side, int budget, const CountingOptions& copt = {});

}  // namespace msrs
