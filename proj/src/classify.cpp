#include "msrs/classify.hpp"

#include <chrono>
#include <functional>

#include "msrs/parallel.hpp"

namespace msrs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool retryable(const Error& e) {
  return e.code() == ErrorCode::undecidable || e.code() == ErrorCode::degenerate_solution;
}

// Does sigma(point) stay away from the root of f in Is? The point is given
// by a callback that encloses sigma over the current refinement, or returns
// nullopt when it cannot yet (or when the point is not in the orthant, via
// `outside`).
struct PointEnclosure {
  std::function<std::optional<RInterval>(bool& outside)> sigma;
  std::function<void()> refine;
};

bool separated(PointEnclosure& pt, const ZPoly& f, IsolatingInterval& Is, int budget) {
  for (int step = 0; step <= budget; ++step) {
    bool outside = false;
    std::optional<RInterval> s = pt.sigma(outside);
    if (outside) return true;
    if (s && s->disjoint(RInterval(Is.lo, Is.hi))) return true;
    pt.refine();
    bisect_root(f, Is);
  }
  return false;
}

bool template_points_clear(const Projection& pr, const TemplateCurve& t, const ZPoly& f, IsolatingInterval Is,
                           int budget) {
  if (pr.Ra.deg() <= 0) return true;
  ZPoly Ra = squarefree(pr.Ra);
  for (IsolatingInterval Ia : isolate_positive_roots(Ra)) {
    PointEnclosure pt;
    pt.sigma = [&](bool& outside) -> std::optional<RInterval> {
      RInterval a(Ia.lo, Ia.hi);
      RInterval s11 = eval_positive(pr.s11, a), s10 = eval_positive(pr.s10, a);
      if (s11.contains_zero()) return std::nullopt;
      RInterval q = -(s10 / s11);
      if (q.hi <= 0) {
        outside = true;
        return std::nullopt;
      }
      if (q.lo <= 0) return std::nullopt;
      RBox X;
      X[static_cast<int>(Var::p)] = a;
      X[static_cast<int>(Var::q)] = q;
      RInterval a1 = eval_positive(t.a1, X), a0 = eval_positive(t.a0, X);
      if (a1.contains_zero()) return std::nullopt;
      return -(a0 / a1);
    };
    pt.refine = [&] { bisect_root(Ra, Ia); };
    if (!separated(pt, f, Is, budget)) return false;
  }
  return true;
}

bool diagonal_points_clear(const DiagonalCurve& d, int k, const ZPoly& f, IsolatingInterval Is, int budget) {
  const ZPoly& gt = d.Gt.at(k);
  if (gt.deg() <= 0) return true;
  ZPoly g = squarefree(gt);
  // Roots shared with a give no finite sigma.
  if (d.a.has_var(Var::q)) {
    ZPoly h = gcd(g, zpoly_from_mpoly(d.a, Var::q));
    if (h.deg() > 0) g = primitive(divexact(g, h));
  }
  for (IsolatingInterval Iq : isolate_positive_roots(g)) {
    PointEnclosure pt;
    pt.sigma = [&](bool&) -> std::optional<RInterval> {
      RBox X;
      X[static_cast<int>(Var::q)] = RInterval(Iq.lo, Iq.hi);
      RInterval a = eval_positive(d.a, X), b = eval_positive(d.b, X);
      if (a.contains_zero()) return std::nullopt;
      return -(b / a);
    };
    pt.refine = [&] { bisect_root(g, Iq); };
    if (!separated(pt, f, Is, budget)) return false;
  }
  return true;
}

}  // namespace

const char* flag_name(BoundaryFlag f) {
  switch (f) {
    case BoundaryFlag::verified_change:
      return "verified_change";
    case BoundaryFlag::pruned:
      return "pruned";
    case BoundaryFlag::kept_unverified:
      return "kept_unverified";
  }
  return "?";
}

std::vector<IsolatingInterval> ClassificationResult::boundaries() const {
  std::vector<IsolatingInterval> out;
  for (size_t k : kept) out.push_back(candidates[k].iv);
  return out;
}

bool ClassificationResult::all_verified() const {
  for (size_t k : kept)
    if (candidates[k].flag == BoundaryFlag::kept_unverified) return false;
  return true;
}

std::optional<Counts> recount_at_root(const RecountContext& ctx, size_t factor, IsolatingInterval I,
                                      const Counts& side, int budget, const CountingOptions& copt) {
  if (budget <= 0) return std::nullopt;
  if (I.exact()) {
    try {
      return equilibrium_counting(ctx.m, ctx.ts, I.lo, copt);
    } catch (const Error& e) {
      if (retryable(e) || e.code() == ErrorCode::infinite_solutions) return std::nullopt;
      throw;
    }
  }
  if (!ctx.cp.escape_excluded) return std::nullopt;
  const ZPoly& f = ctx.cp.basis.at(factor);
  for (size_t pi : ctx.cp.provenance.at(factor)) {
    const Projection& pr = ctx.cp.projections[pi];
    if (pr.kind == "diagonal") {
      if (!diagonal_points_clear(ctx.d, pr.k, f, I, budget)) return std::nullopt;
    } else if (pr.kind == "template") {
      if (!template_points_clear(pr, ctx.ts.at(pr.i - 1), f, I, budget)) return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  return side;
}

ClassificationResult classify(const MSRSModel& m, const ClassifyOptions& opt) {
  ClassificationResult res;
  auto t0 = Clock::now();
  DiagonalCurve d = diagonal_curve(m);
  std::vector<TemplateCurve> ts;
  for (int i = 1; 2 * i <= m.n; ++i) ts.push_back(template_curve(m, i));
  res.timing.reduction = seconds_since(t0);

  t0 = Clock::now();
  EliminationOptions eo;
  eo.strict = opt.strict;
  eo.jobs = opt.jobs;
  eo.inject = opt.inject;
  res.cp = critical_polynomial(m, eo);
  res.notes = res.cp.notes;
  res.timing.elimination = seconds_since(t0);

  t0 = Clock::now();
  auto roots = isolate_positive_roots(res.cp.basis);
  std::vector<IsolatingInterval> ivs;
  for (const auto& r : roots) {
    res.candidates.push_back({r.iv, r.factor, BoundaryFlag::verified_change, std::nullopt});
    ivs.push_back(r.iv);
  }
  res.samples = sample_between(ivs);
  res.timing.isolation = seconds_since(t0);

  t0 = Clock::now();
  size_t G = res.samples.size();
  // Upper end of each gap, for alternates and retries.
  auto gap_hi = [&](size_t g) { return g < ivs.size() ? ivs[g].lo : res.samples[g] + 2; };
  if (opt.alternate_samples)
    for (size_t g = 0; g < G; ++g) res.samples[g] = simplest_between(res.samples[g], gap_hi(g));
  ValidationReport vr = validate_model(m, res.samples);
  if (!vr.extremes_ok()) {
    std::string msg = "extreme-point check failed at sigma =";
    for (const auto& e : vr.extreme_point_checks)
      if (e.positive_extremes > 1) msg += " " + rat_str(e.sigma);
    throw Error(ErrorCode::validation, msg);
  }
  for (const auto& w : vr.warnings) res.notes.push_back(w);

  res.sample_counts.resize(G);
  CountingOptions copt = opt.counting;
  copt.jobs = 1;
  std::vector<std::function<void()>> tasks;
  for (size_t g = 0; g < G; ++g)
    tasks.push_back([&, g] {
      try {
        res.sample_counts[g] = equilibrium_counting(m, ts, res.samples[g], copt);
      } catch (const Error& e) {
        if (!retryable(e)) throw;
        Rat alt = simplest_between(res.samples[g], gap_hi(g));
        res.sample_counts[g] = equilibrium_counting(m, ts, alt, copt);
        res.samples[g] = alt;
      }
    });
  run_tasks(tasks, opt.jobs);

  // Sequential sweep in increasing order.
  RecountContext ctx{m, res.cp, d, ts};
  res.bands.push_back(res.sample_counts[0]);
  for (size_t j = 0; j < res.candidates.size(); ++j) {
    Candidate& c = res.candidates[j];
    const Counts& left = res.bands.back();
    const Counts& right = res.sample_counts[j + 1];
    if (left != right) {
      c.flag = BoundaryFlag::verified_change;
    } else {
      c.at_root = recount_at_root(ctx, c.factor, c.iv, left, opt.recount_budget, copt);
      if (!c.at_root)
        c.flag = BoundaryFlag::kept_unverified;
      else if (*c.at_root == left)
        c.flag = BoundaryFlag::pruned;
      else
        c.flag = BoundaryFlag::verified_change;
    }
    if (c.flag != BoundaryFlag::pruned) {
      res.kept.push_back(j);
      res.bands.push_back(right);
    }
  }
  res.timing.counting = seconds_since(t0);

  t0 = Clock::now();
  for (auto& c : res.candidates)
    if (!c.iv.exact() && c.iv.width() > opt.refine_width)
      c.iv = refine_root(res.cp.basis[c.factor], c.iv, opt.refine_width);
  res.timing.isolation += seconds_since(t0);
  return res;
}

}  // namespace msrs
