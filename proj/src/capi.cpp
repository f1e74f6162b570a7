#include "msrs/msrs.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <string>

#include "msrs/classify.hpp"
#include "msrs/counting.hpp"
#include "msrs/model.hpp"
#include "msrs/oracle.hpp"
#include "msrs/report.hpp"

struct msrs_model {
  msrs::MSRSModel m;
};

struct msrs_result {
  msrs::ClassificationResult r;
  msrs::Rat refine_width;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
msrs_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return MSRS_OK;
  } catch (const msrs::Error& e) {
    g_last_error = e.what();
    return static_cast<msrs_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MSRS_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MSRS_E_INTERNAL;
  }
}

msrs_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return MSRS_E_NULL;
}

}  // namespace

extern "C" {

const char* msrs_last_error(void) { return g_last_error.c_str(); }

const char* msrs_status_name(msrs_status s) {
  switch (s) {
    case MSRS_OK: return "ok";
    case MSRS_E_PARSE: return "parse";
    case MSRS_E_BAD_PARAMETER: return "bad_parameter";
    case MSRS_E_BAD_MULTIPLICITY: return "bad_multiplicity";
    case MSRS_E_NOT_DIVISIBLE: return "not_divisible";
    case MSRS_E_DIVISION_BY_ZERO: return "division_by_zero";
    case MSRS_E_IDENTICALLY_ZERO: return "identically_zero";
    case MSRS_E_UNDECIDABLE: return "undecidable";
    case MSRS_E_DEGENERATE_SOLUTION: return "degenerate_solution";
    case MSRS_E_INFINITE_SOLUTIONS: return "infinite_solutions";
    case MSRS_E_EMPTY_GAP: return "empty_gap";
    case MSRS_E_VALIDATION: return "validation";
    case MSRS_E_INVALID_ARGUMENT: return "invalid_argument";
    case MSRS_E_INTERNAL: return "internal";
    case MSRS_E_NULL: return "null";
    case MSRS_E_RANGE: return "range";
  }
  return "unknown";
}

void msrs_string_free(char* s) { std::free(s); }

msrs_status msrs_model_builtin(const char* family, int n, const char* c, const char* alpha, const char* K2,
                               const char* a_t, msrs_model** out) {
  if (!family) return null_arg("family");
  if (!out) return null_arg("out");
  return guard([&] {
    msrs::Params p;
    p["n"] = msrs::Rat(n);
    if (c) p["c"] = msrs::parse_rat(c);
    if (alpha) p["alpha"] = msrs::parse_rat(alpha);
    if (K2) p["K2"] = msrs::parse_rat(K2);
    if (a_t) p["a_t"] = msrs::parse_rat(a_t);
    auto* m = new msrs_model{msrs::builtin_model(msrs::family_from_name(family), p)};
    *out = m;
  });
}

msrs_status msrs_model_parse(const char* text, msrs_model** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guard([&] { *out = new msrs_model{msrs::parse_model(text)}; });
}

msrs_status msrs_model_serialize(const msrs_model* m, char** out) {
  if (!m) return null_arg("model");
  if (!out) return null_arg("out");
  return guard([&] { *out = dup(msrs::serialize_model(m->m)); });
}

int msrs_model_n(const msrs_model* m) { return m ? m->m.n : 0; }

void msrs_model_free(msrs_model* m) { delete m; }

void msrs_classify_options_init(msrs_classify_options* o) {
  if (!o) return;
  o->refine_width = nullptr;
  o->strict = 0;
  o->jobs = 1;
  o->recount_budget = -1;
  o->alternate_samples = 0;
}

msrs_status msrs_classify(const msrs_model* m, const msrs_classify_options* o, msrs_result** out) {
  if (!m) return null_arg("model");
  if (!out) return null_arg("out");
  return guard([&] {
    msrs::ClassifyOptions opt;
    if (o) {
      if (o->refine_width) opt.refine_width = msrs::parse_rat(o->refine_width);
      if (opt.refine_width <= 0) throw msrs::Error(msrs::ErrorCode::invalid_argument, "refine width must be positive");
      opt.strict = o->strict != 0;
      opt.jobs = o->jobs > 0 ? o->jobs : 1;
      if (o->recount_budget >= 0) opt.recount_budget = o->recount_budget;
      opt.alternate_samples = o->alternate_samples != 0;
    }
    auto* r = new msrs_result{msrs::classify(m->m, opt), opt.refine_width};
    *out = r;
  });
}

void msrs_result_free(msrs_result* r) { delete r; }

size_t msrs_result_boundary_count(const msrs_result* r) { return r ? r->r.kept.size() : 0; }

msrs_status msrs_result_boundary(const msrs_result* r, size_t k, char** lo, char** hi, double* approx,
                                 msrs_flag* flag) {
  if (!r) return null_arg("result");
  if (k >= r->r.kept.size()) {
    g_last_error = "boundary index out of range";
    return MSRS_E_RANGE;
  }
  const auto& c = r->r.candidates[r->r.kept[k]];
  if (lo) *lo = dup(msrs::rat_str(c.iv.lo));
  if (hi) *hi = dup(msrs::rat_str(c.iv.hi));
  if (approx) *approx = msrs::Rat((c.iv.lo + c.iv.hi) / 2).get_d();
  if (flag) *flag = static_cast<msrs_flag>(static_cast<int>(c.flag));
  return MSRS_OK;
}

size_t msrs_result_band_count(const msrs_result* r) { return r ? r->r.bands.size() : 0; }

msrs_status msrs_result_band(const msrs_result* r, size_t k, long* e, long* s) {
  if (!r) return null_arg("result");
  if (k >= r->r.bands.size()) {
    g_last_error = "band index out of range";
    return MSRS_E_RANGE;
  }
  if (e) *e = r->r.bands[k].e;
  if (s) *s = r->r.bands[k].s;
  return MSRS_OK;
}

size_t msrs_result_sample_count(const msrs_result* r) { return r ? r->r.samples.size() : 0; }

msrs_status msrs_result_sample(const msrs_result* r, size_t k, char** sigma, long* e, long* s) {
  if (!r) return null_arg("result");
  if (k >= r->r.samples.size()) {
    g_last_error = "sample index out of range";
    return MSRS_E_RANGE;
  }
  if (sigma) *sigma = dup(msrs::rat_str(r->r.samples[k]));
  if (e) *e = r->r.sample_counts[k].e;
  if (s) *s = r->r.sample_counts[k].s;
  return MSRS_OK;
}

int msrs_result_B_degree(const msrs_result* r) { return r ? r->r.cp.B.deg() : -1; }

int msrs_result_all_verified(const msrs_result* r) { return r && r->r.all_verified() ? 1 : 0; }

msrs_status msrs_result_timing(const msrs_result* r, double out[4]) {
  if (!r) return null_arg("result");
  if (!out) return null_arg("out");
  out[0] = r->r.timing.reduction;
  out[1] = r->r.timing.elimination;
  out[2] = r->r.timing.isolation;
  out[3] = r->r.timing.counting;
  return MSRS_OK;
}

msrs_status msrs_result_render(const msrs_result* r, const char* format, int timing, char** out) {
  if (!r) return null_arg("result");
  if (!format) return null_arg("format");
  if (!out) return null_arg("out");
  return guard([&] {
    std::string f = format;
    if (f == "json")
      *out = dup(msrs::render_json(r->r, r->refine_width, timing != 0));
    else if (f == "text")
      *out = dup(msrs::render_text(r->r, r->refine_width, timing != 0));
    else
      throw msrs::Error(msrs::ErrorCode::invalid_argument, "unknown format '" + f + "'");
  });
}

msrs_status msrs_count(const msrs_model* m, const char* sigma, int jobs, long* e, long* s) {
  if (!m) return null_arg("model");
  if (!sigma) return null_arg("sigma");
  return guard([&] {
    msrs::Rat v = msrs::parse_rat(sigma);
    if (v <= 0) throw msrs::Error(msrs::ErrorCode::invalid_argument, "sigma must be positive");
    msrs::CountingOptions co;
    co.jobs = jobs > 0 ? jobs : 1;
    msrs::Counts c = msrs::equilibrium_counting(m->m, v, co);
    if (e) *e = c.e;
    if (s) *s = c.s;
  });
}

void msrs_oracle_options_init(msrs_oracle_options* o) {
  if (!o) return;
  o->starts = 10000;
  o->seed = 1;
  o->jobs = 1;
}

msrs_status msrs_oracle(const msrs_model* m, const char* sigma, const msrs_oracle_options* o, long* e, long* s,
                        int* theorems_ok, char** report) {
  if (!m) return null_arg("model");
  if (!sigma) return null_arg("sigma");
  return guard([&] {
    msrs::Rat v = msrs::parse_rat(sigma);
    msrs::OracleOptions oo;
    if (o) {
      oo.starts = o->starts;
      oo.seed = o->seed;
      oo.jobs = o->jobs > 0 ? o->jobs : 1;
    }
    auto eqs = msrs::numeric_equilibria(m->m, v, oo);
    auto c = msrs::count_numeric(eqs);
    auto rep = msrs::theorem_checks(m->m, v, eqs);
    if (e) *e = c.e;
    if (s) *s = c.s;
    if (theorems_ok) *theorems_ok = rep.ok() ? 1 : 0;
    if (report) {
      nlohmann::json j;
      j["sigma"] = msrs::rat_str(v);
      j["e"] = c.e;
      j["s"] = c.s;
      j["checked"] = rep.checked;
      j["rejected"] = rep.rejected;
      j["real_spectrum_violations"] = rep.real_spectrum_violations;
      j["cluster_violations"] = rep.cluster_violations;
      j["eigen_prediction_violations"] = rep.eigen_prediction_violations;
      j["stability_disagreements"] = rep.stability_disagreements;
      j["max_imag"] = rep.max_imag;
      j["max_prediction_error"] = rep.max_prediction_error;
      j["messages"] = rep.messages;
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& q : eqs)
        pts.push_back({{"point", q.point}, {"stable", q.stable}, {"template", q.template_i}});
      j["equilibria"] = pts;
      *report = dup(j.dump(2));
    }
  });
}

}  // extern "C"
