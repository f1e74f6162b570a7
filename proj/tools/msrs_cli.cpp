// Command-line front end. Talks to the engine only through msrs.h.
#include <CLI11.hpp>
#include <msrs/msrs.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnverified = 1;
constexpr int kExitError = 2;

struct ApiError : std::runtime_error {
  msrs_status status;
  ApiError(msrs_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(msrs_status s) {
  if (s != MSRS_OK) throw ApiError(s, msrs_last_error());
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

struct CString {
  char* p = nullptr;
  ~CString() { msrs_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ModelPtr {
  msrs_model* p = nullptr;
  ModelPtr() = default;
  ModelPtr(const ModelPtr&) = delete;
  ModelPtr& operator=(const ModelPtr&) = delete;
  ~ModelPtr() { msrs_model_free(p); }
};

struct ResultPtr {
  msrs_result* p = nullptr;
  ResultPtr() = default;
  ResultPtr(const ResultPtr&) = delete;
  ResultPtr& operator=(const ResultPtr&) = delete;
  ~ResultPtr() { msrs_result_free(p); }
};

// Small rational used for stepping c in sweeps; the engine parses the text form.
struct Q {
  long long num = 0, den = 1;
  static Q parse(const std::string& t) {
    Q q;
    size_t slash = t.find('/');
    try {
      size_t used = 0;
      if (slash == std::string::npos) {
        q.num = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
      } else {
        std::string a = t.substr(0, slash), b = t.substr(slash + 1);
        q.num = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(t);
        q.den = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(t);
      }
    } catch (const std::logic_error&) {
      throw ApiError(MSRS_E_PARSE, "not a rational: '" + t + "'");
    }
    if (q.den == 0) throw ApiError(MSRS_E_DIVISION_BY_ZERO, "zero denominator in '" + t + "'");
    q.norm();
    return q;
  }
  void norm() {
    if (den < 0) num = -num, den = -den;
    long long g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  Q operator+(const Q& o) const {
    Q r{num * o.den + o.num * den, den * o.den};
    r.norm();
    return r;
  }
  bool operator<=(const Q& o) const { return num * o.den <= o.num * den; }
  bool positive() const { return num > 0; }
  double value() const { return double(num) / double(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

struct Common {
  std::string model_file;
  std::string family;
  int n = 0;
  std::string c, alpha, K2, a_t;
  std::string out = "text";
  std::string refine_width = "1/1000000000";
  bool strict = false;
  bool timing = false;
  int jobs = 1;
};

void load_model(const Common& o, const std::string& c_override, ModelPtr& m) {
  if (!o.model_file.empty()) {
    std::ifstream in(o.model_file);
    if (!in) throw ApiError(MSRS_E_INVALID_ARGUMENT, "cannot read model file '" + o.model_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    check(msrs_model_parse(ss.str().c_str(), &m.p));
    return;
  }
  if (o.family.empty()) throw ApiError(MSRS_E_INVALID_ARGUMENT, "either --model or --family is required");
  if (o.n <= 0) throw ApiError(MSRS_E_INVALID_ARGUMENT, "--n is required with --family");
  const std::string& c = c_override.empty() ? o.c : c_override;
  auto opt = [](const std::string& s) { return s.empty() ? nullptr : s.c_str(); };
  check(msrs_model_builtin(o.family.c_str(), o.n, opt(c), opt(o.alpha), opt(o.K2), opt(o.a_t), &m.p));
}

msrs_classify_options classify_options(const Common& o) {
  msrs_classify_options co;
  msrs_classify_options_init(&co);
  co.refine_width = o.refine_width.c_str();
  co.strict = o.strict ? 1 : 0;
  co.jobs = o.jobs;
  return co;
}

std::string timing_text(const msrs_result* r) {
  double t[4];
  check(msrs_result_timing(r, t));
  std::ostringstream os;
  os << "timing: reduction " << t[0] << " s, elimination " << t[1] << " s, isolation " << t[2] << " s, counting "
     << t[3] << " s";
  return os.str();
}

int cmd_classify(const Common& o) {
  ModelPtr m;
  load_model(o, "", m);
  auto co = classify_options(o);
  ResultPtr r;
  check(msrs_classify(m.p, &co, &r.p));
  if (o.out == "csv") {
    std::cout << "k,lo,hi,approx,flag\n";
    for (size_t k = 0; k < msrs_result_boundary_count(r.p); ++k) {
      CString lo, hi;
      double approx;
      msrs_flag flag;
      check(msrs_result_boundary(r.p, k, &lo.p, &hi.p, &approx, &flag));
      std::cout << k + 1 << "," << lo.str() << "," << hi.str() << "," << std::setprecision(17) << approx << ","
                << (flag == MSRS_VERIFIED_CHANGE ? "verified_change" : flag == MSRS_PRUNED ? "pruned" : "kept_unverified")
                << "\n";
    }
  } else {
    CString text;
    check(msrs_result_render(r.p, o.out.c_str(), o.timing ? 1 : 0, &text.p));
    std::cout << text.str();
    if (o.out == "json") std::cout << "\n";
  }
  return msrs_result_all_verified(r.p) ? kExitOk : kExitUnverified;
}

int cmd_count(const Common& o, const std::string& sigma) {
  if (sigma.empty()) throw ApiError(MSRS_E_INVALID_ARGUMENT, "--sigma is required");
  ModelPtr m;
  load_model(o, "", m);
  long e = 0, s = 0;
  check(msrs_count(m.p, sigma.c_str(), o.jobs, &e, &s));
  if (o.out == "json")
    std::cout << "{\"sigma\": \"" << json_escape(sigma) << "\", \"e\": " << e << ", \"s\": " << s << "}\n";
  else if (o.out == "csv")
    std::cout << "sigma,e,s\n" << sigma << "," << e << "," << s << "\n";
  else
    std::cout << "e=" << e << " s=" << s << "\n";
  return kExitOk;
}

struct SweepRow {
  int n;
  std::string c;
  size_t k;
  double sigma;
  std::string lo, hi, flag;
  long e_below, s_below, e_above, s_above;
  std::optional<double> residual;
};

struct SweepItem {
  Q c;
  std::vector<SweepRow> rows;
  bool verified = true;
  std::string error;
  double timing[4] = {0, 0, 0, 0};
};

void sweep_one(const Common& o, SweepItem& it) {
  ModelPtr m;
  load_model(o, it.c.str(), m);
  auto co = classify_options(o);
  co.jobs = 1;
  ResultPtr r;
  check(msrs_classify(m.p, &co, &r.p));
  check(msrs_result_timing(r.p, it.timing));
  it.verified = msrs_result_all_verified(r.p) != 0;
  int n = msrs_model_n(m.p);
  size_t nb = msrs_result_boundary_count(r.p);
  if (nb == 0) {
    // No boundary: a single k=0 row carries the one band.
    SweepRow row{n, it.c.str(), 0, NAN, "", "", "none", 0, 0, 0, 0, std::nullopt};
    check(msrs_result_band(r.p, 0, &row.e_below, &row.s_below));
    row.e_above = row.e_below;
    row.s_above = row.s_below;
    it.rows.push_back(row);
    return;
  }
  for (size_t k = 0; k < nb; ++k) {
    SweepRow row{n, it.c.str(), k + 1, 0, "", "", "", 0, 0, 0, 0, std::nullopt};
    CString lo, hi;
    msrs_flag flag;
    check(msrs_result_boundary(r.p, k, &lo.p, &hi.p, &row.sigma, &flag));
    row.lo = lo.str();
    row.hi = hi.str();
    row.flag = flag == MSRS_VERIFIED_CHANGE ? "verified_change" : flag == MSRS_PRUNED ? "pruned" : "kept_unverified";
    check(msrs_result_band(r.p, k, &row.e_below, &row.s_below));
    check(msrs_result_band(r.p, k + 1, &row.e_above, &row.s_above));
    if (k + 1 == nb) {
      double c = it.c.value();
      row.residual = c - n + 1 - std::pow(c / row.sigma, c / (c + 1));
    }
    it.rows.push_back(row);
  }
}

int cmd_sweep(const Common& o, const std::string& cmin, const std::string& cmax, const std::string& cstep) {
  if (!o.model_file.empty()) throw ApiError(MSRS_E_INVALID_ARGUMENT, "sweep needs --family, not --model");
  Q lo = Q::parse(cmin), hi = Q::parse(cmax), step = Q::parse(cstep);
  if (!step.positive()) throw ApiError(MSRS_E_INVALID_ARGUMENT, "--c-step must be positive");
  if (!lo.positive()) throw ApiError(MSRS_E_INVALID_ARGUMENT, "--c-min must be positive");
  std::vector<SweepItem> items;
  for (Q c = lo; c <= hi; c = c + step) items.push_back(SweepItem{c, {}, true, "", {}});

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        sweep_one(o, items[i]);
      } catch (const ApiError& e) {
        items[i].error = std::string(msrs_status_name(e.status)) + ": " + e.what();
      }
    }
  };
  int nthreads = std::max(1, std::min<int>(o.jobs, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool ok = true;
  auto fmt = [](double x) {
    if (std::isnan(x)) return std::string("null");
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
  };
  if (o.out == "json") {
    std::cout << "[\n";
    bool first = true;
    for (const auto& it : items) {
      for (const auto& r : it.rows) {
        std::cout << (first ? "  " : ",\n  ") << "{\"n\": " << r.n << ", \"c\": \"" << r.c << "\", \"k\": " << r.k
                  << ", \"sigma\": " << fmt(r.sigma) << ", \"lo\": \"" << r.lo << "\", \"hi\": \"" << r.hi
                  << "\", \"flag\": \"" << r.flag << "\", \"below\": {\"e\": " << r.e_below << ", \"s\": " << r.s_below
                  << "}, \"above\": {\"e\": " << r.e_above << ", \"s\": " << r.s_above << "}";
        if (r.residual) std::cout << ", \"residual\": " << fmt(*r.residual);
        std::cout << "}";
        first = false;
      }
    }
    std::cout << "\n]\n";
  } else {
    std::cout << "n,c,k,sigma,lo,hi,flag,e_below,s_below,e_above,s_above,residual";
    if (o.timing) std::cout << ",t_reduction,t_elimination,t_isolation,t_counting";
    std::cout << "\n";
    for (const auto& it : items)
      for (const auto& r : it.rows) {
        std::cout << r.n << "," << r.c << "," << r.k << "," << (std::isnan(r.sigma) ? "" : fmt(r.sigma)) << "," << r.lo << "," << r.hi << ","
                  << r.flag << "," << r.e_below << "," << r.s_below << "," << r.e_above << "," << r.s_above << ","
                  << (r.residual ? fmt(*r.residual) : "");
        if (o.timing)
          std::cout << "," << it.timing[0] << "," << it.timing[1] << "," << it.timing[2] << "," << it.timing[3];
        std::cout << "\n";
      }
  }
  for (const auto& it : items) {
    if (!it.error.empty()) {
      std::cerr << "{\"error\": \"sweep\", \"c\": \"" << it.c.str() << "\", \"message\": \"" << json_escape(it.error)
                << "\"}\n";
      ok = false;
    }
    if (!it.verified) ok = false;
  }
  return ok ? kExitOk : kExitUnverified;
}

int cmd_oracle(const Common& o, int starts, uint64_t seed) {
  ModelPtr m;
  load_model(o, "", m);
  auto co = classify_options(o);
  ResultPtr r;
  check(msrs_classify(m.p, &co, &r.p));
  msrs_oracle_options oo;
  msrs_oracle_options_init(&oo);
  oo.starts = starts;
  oo.seed = seed;
  oo.jobs = o.jobs;
  bool ok = msrs_result_all_verified(r.p) != 0;
  std::ostringstream js;
  js << "[";
  for (size_t k = 0; k < msrs_result_sample_count(r.p); ++k) {
    CString sigma;
    long e = 0, s = 0, ne = 0, ns = 0;
    int th = 0;
    check(msrs_result_sample(r.p, k, &sigma.p, &e, &s));
    CString report;
    check(msrs_oracle(m.p, sigma.str().c_str(), &oo, &ne, &ns, &th, o.out == "json" ? &report.p : nullptr));
    bool match = e == ne && s == ns;
    ok = ok && match && th;
    if (o.out == "json") {
      js << (k ? ",\n " : "\n ") << "{\"sigma\": \"" << sigma.str() << "\", \"exact\": {\"e\": " << e << ", \"s\": " << s
         << "}, \"numeric\": {\"e\": " << ne << ", \"s\": " << ns << "}, \"match\": " << (match ? "true" : "false")
         << ", \"theorems\": " << report.str() << "}";
    } else {
      std::cout << "sigma=" << sigma.str() << " exact e=" << e << " s=" << s << " numeric e=" << ne << " s=" << ns
                << (match ? " match" : " MISMATCH") << (th ? "" : " theorem-violation") << "\n";
    }
  }
  if (o.out == "json") std::cout << js.str() << "\n]\n";
  if (o.timing) std::cerr << timing_text(r.p) << "\n";
  return ok ? kExitOk : kExitUnverified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact equilibrium classification for multistable regulatory systems"};
  app.require_subcommand(1);
  Common o;
  std::string sigma, cmin = "1", cmax, cstep = "1";
  int starts = 10000;
  uint64_t seed = 1;

  auto shared = [&](CLI::App* sc) {
    sc->add_option("--model", o.model_file, "model file (JSON)");
    sc->add_option("--family", o.family, "simultaneous_decision, mutual_inhibition or bhlh");
    sc->add_option("--n", o.n, "dimension");
    sc->add_option("--c", o.c, "cooperativity, rational");
    sc->add_option("--alpha", o.alpha, "mutual_inhibition parameter");
    sc->add_option("--K2", o.K2, "bhlh parameter");
    sc->add_option("--a-t", o.a_t, "bhlh parameter");
    sc->add_option("--out", o.out, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sc->add_option("--refine-width", o.refine_width, "boundary interval width");
    sc->add_flag("--strict", o.strict, "include boundary projections in B");
    sc->add_flag("--timing", o.timing, "report per-phase wall-clock");
    sc->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* classify = app.add_subcommand("classify", "boundaries and per-band counts");
  shared(classify);
  auto* count = app.add_subcommand("count", "equilibria and stable equilibria at one sigma");
  shared(count);
  count->add_option("--sigma", sigma, "sigma, rational")->required();
  auto* sweep = app.add_subcommand("sweep", "classify over a range of c");
  shared(sweep);
  sweep->add_option("--c-min", cmin, "first c");
  sweep->add_option("--c-max", cmax, "last c")->required();
  sweep->add_option("--c-step", cstep, "c increment");
  auto* oracle = app.add_subcommand("oracle-check", "numeric cross-check at every sample point");
  shared(oracle);
  oracle->add_option("--starts", starts, "Newton starts")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*classify) return cmd_classify(o);
    if (*count) return cmd_count(o, sigma);
    if (*sweep) return cmd_sweep(o, cmin, cmax, cstep);
    if (*oracle) return cmd_oracle(o, starts, seed);
  } catch (const ApiError& e) {
    std::cerr << "{\"error\": \"" << msrs_status_name(e.status) << "\", \"message\": \"" << json_escape(e.what())
              << "\"}\n";
    return kExitError;
  }
  return kExitError;
}
