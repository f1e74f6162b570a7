#include "msrs/model.hpp"

#include <cmath>
#include <json.hpp>

#include "msrs/realroots.hpp"
#include "msrs/upoly.hpp"

namespace msrs {

using nlohmann::json;

const char* family_name(Family f) {
  switch (f) {
    case Family::simultaneous_decision: return "simultaneous_decision";
    case Family::mutual_inhibition: return "mutual_inhibition";
    case Family::bhlh: return "bhlh";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  if (name == "simultaneous_decision") return Family::simultaneous_decision;
  if (name == "mutual_inhibition") return Family::mutual_inhibition;
  if (name == "bhlh") return Family::bhlh;
  throw Error(ErrorCode::parse, "unknown family '" + name + "'");
}

namespace {

const MPoly kZ = MPoly::variable(Var::z);
const MPoly kS = MPoly::variable(Var::s);

Rat need(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(ErrorCode::bad_parameter, "missing parameter '" + key + "'");
  return it->second;
}

int need_n(const Params& p) {
  Rat n = need(p, "n");
  if (n.get_den() != 1 || n < 2 || n > 1000)
    throw Error(ErrorCode::bad_parameter, "n must be an integer >= 2, got " + rat_str(n));
  return static_cast<int>(n.get_num().get_si());
}

uint32_t to_exp(const Int& k) {
  if (k <= 0 || k > 100000) throw Error(ErrorCode::bad_parameter, "exponent out of range");
  return static_cast<uint32_t>(k.get_ui());
}

}  // namespace

MSRSModel builtin_model(Family family, const Params& params) {
  MSRSModel m;
  m.family = family;
  m.n = need_n(params);
  if (family == Family::bhlh) {
    Rat K2 = need(params, "K2"), at = need(params, "a_t");
    if (K2 <= 0) throw Error(ErrorCode::bad_parameter, "K2 must be positive");
    if (at <= 0) throw Error(ErrorCode::bad_parameter, "a_t must be positive");
    m.K2 = K2;
    m.a_t = at;
    m.l = kZ;
    m.g = kZ.pow(2);
    m.h = kZ.pow(2);
    m.psi = kZ;
    m.A = (MPoly(1) + kS).pow(2).scaled(K2 / (at * at));
    m.label = "bhlh(n=" + std::to_string(m.n) + ", K2=" + rat_str(K2) + ", a_t=" + rat_str(at) + ")";
    return m;
  }
  if (family == Family::custom) throw Error(ErrorCode::bad_parameter, "custom models come from a model file");
  Rat c = need(params, "c");
  if (c <= 0) throw Error(ErrorCode::bad_parameter, "c must be positive, got " + rat_str(c));
  m.c = c;
  m.c_denominator = static_cast<unsigned>(c.get_den().get_ui());
  uint32_t a = to_exp(c.get_num());
  uint32_t b = m.c_denominator;
  // x = u^b, x^c = u^a
  MPoly x = MPoly::variable(Var::z, b);
  MPoly xc = MPoly::variable(Var::z, a);
  if (family == Family::simultaneous_decision) {
    m.l = x;
    m.g = MPoly(1);
    m.h = -xc;
    m.psi = xc;
    m.A = MPoly(1) + kS;
    m.label = "simultaneous_decision(n=" + std::to_string(m.n) + ", c=" + rat_str(c) + ")";
  } else {
    Rat alpha = params.count("alpha") ? params.at("alpha") : Rat(0);
    if (alpha < 0) throw Error(ErrorCode::bad_parameter, "alpha must be nonnegative");
    m.alpha = alpha;
    m.l = x - MPoly(alpha);
    m.g = xc;
    m.h = MPoly();
    m.psi = xc;
    m.A = MPoly(1) + kS;
    m.label = "mutual_inhibition(n=" + std::to_string(m.n) + ", c=" + rat_str(c) +
              ", alpha=" + rat_str(alpha) + ")";
  }
  return m;
}

namespace {

Rat json_rat(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, "field '" + field + "': " + e.what());
    }
  }
  if (v.is_number_integer()) return Rat(Int(std::to_string(v.get<long long>())));
  if (v.is_number()) return parse_rat(v.dump());
  throw Error(ErrorCode::parse, "field '" + field + "': expected a rational, got " + v.dump());
}

MPoly json_poly(const json& obj, const std::string& field, Var v) {
  if (!obj.contains(field)) throw Error(ErrorCode::parse, "custom model: missing field '" + field + "'");
  const json& arr = obj.at(field);
  if (!arr.is_array()) throw Error(ErrorCode::parse, "custom model: field '" + field + "' must be an array");
  std::vector<Rat> c;
  for (size_t i = 0; i < arr.size(); ++i) c.push_back(json_rat(arr[i], field + "[" + std::to_string(i) + "]"));
  return MPoly::univariate(v, c);
}

json poly_json(const MPoly& f, Var v) {
  json arr = json::array();
  for (const auto& c : f.univariate_coeffs(v)) arr.push_back(rat_str(c));
  return arr;
}

}  // namespace

MSRSModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("model file: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::parse, "model file: top level must be an object");
  if (j.contains("custom")) {
    const json& c = j.at("custom");
    if (!c.is_object()) throw Error(ErrorCode::parse, "field 'custom' must be an object");
    if (!c.contains("n") || !c.at("n").is_number_integer())
      throw Error(ErrorCode::parse, "custom model: field 'n' must be an integer");
    MSRSModel m;
    m.family = Family::custom;
    Params p{{"n", Rat(c.at("n").get<long>())}};
    m.n = need_n(p);
    m.l = json_poly(c, "l", Var::z);
    m.g = json_poly(c, "g", Var::z);
    m.h = json_poly(c, "h", Var::z);
    m.A = json_poly(c, "A", Var::s);
    m.psi = json_poly(c, "psi", Var::z);
    if (m.l.is_zero()) throw Error(ErrorCode::bad_parameter, "custom model: l must be nonzero");
    if (m.psi.is_constant() && m.A.is_constant())
      throw Error(ErrorCode::bad_parameter, "custom model: A and psi are both constant");
    m.label = c.value("label", std::string("custom(n=") + std::to_string(m.n) + ")");
    return m;
  }
  if (!j.contains("family") || !j.at("family").is_string())
    throw Error(ErrorCode::parse, "model file: expected 'family' or 'custom'");
  Family fam = family_from_name(j.at("family").get<std::string>());
  Params p;
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw Error(ErrorCode::parse, "model file: field 'n' must be an integer");
  p["n"] = Rat(j.at("n").get<long>());
  for (const char* key : {"c", "alpha", "K2", "a_t"})
    if (j.contains(key)) p[key] = json_rat(j.at(key), key);
  std::vector<const char*> required;
  if (fam == Family::bhlh) required = {"K2", "a_t"};
  else if (fam != Family::custom) required = {"c"};
  if (fam == Family::mutual_inhibition && !p.count("alpha")) p["alpha"] = 0;
  for (const char* key : required)
    if (!p.count(key)) throw Error(ErrorCode::parse, std::string("model file: missing field '") + key + "'");
  return builtin_model(fam, p);
}

std::string serialize_model(const MSRSModel& m) {
  json j;
  if (m.family == Family::custom) {
    json c;
    c["n"] = m.n;
    c["l"] = poly_json(m.l, Var::z);
    c["g"] = poly_json(m.g, Var::z);
    c["h"] = poly_json(m.h, Var::z);
    c["A"] = poly_json(m.A, Var::s);
    c["psi"] = poly_json(m.psi, Var::z);
    j["custom"] = c;
  } else {
    j["family"] = family_name(m.family);
    j["n"] = m.n;
    if (m.family == Family::bhlh) {
      j["K2"] = rat_str(m.K2);
      j["a_t"] = rat_str(m.a_t);
    } else {
      j["c"] = rat_str(m.c);
      if (m.family == Family::mutual_inhibition) j["alpha"] = rat_str(m.alpha);
    }
  }
  return j.dump();
}

bool positive_on_orthant(const MPoly& f) {
  if (f.constant_value() <= 0) return false;
  for (const auto& t : f.terms())
    if (t.second < 0) return false;
  return true;
}

int positive_extreme_count(const MSRSModel& m, const Rat& sigma) {
  // d/dz (sigma g/l - h) has numerator sigma (g' l - g l') - h' l^2. For
  // rational c the u-derivative differs by a positive factor only.
  Var z = Var::z;
  MPoly num = (derivative(m.g, z) * m.l - m.g * derivative(m.l, z)).scaled(sigma) -
              derivative(m.h, z) * m.l * m.l;
  if (num.is_zero()) return 0;
  ZPoly odd(Int(1));
  for (const auto& [fac, mult] : squarefree_decomposition(zpoly_from_mpoly(num, z)))
    if (mult & 1) odd = odd * fac;
  if (odd.deg() <= 0) return 0;
  return static_cast<int>(isolate_positive_roots(odd).size());
}

ValidationReport validate_model(const MSRSModel& m, const std::vector<Rat>& sigma_samples) {
  ValidationReport r;
  MPoly p = MPoly::variable(Var::p), q = MPoly::variable(Var::q);
  auto at = [](const MPoly& f, const MPoly& x) { return substitute(f, {{Var::z, x}}); };
  auto A_of = [&](const MPoly& s) { return substitute(m.A, {{Var::s, s}}); };
  bool ok = positive_on_orthant(A_of(at(m.psi, q).scaled(m.n)) + at(m.h, q));
  for (int i = 1; ok && i <= m.n / 2; ++i) {
    MPoly s = at(m.psi, p).scaled(i) + at(m.psi, q).scaled(m.n - i);
    MPoly As = A_of(s);
    ok = positive_on_orthant(As + at(m.h, p)) && positive_on_orthant(As + at(m.h, q));
  }
  r.denominator_positivity = ok;
  if (!ok) r.warnings.push_back("denominator positivity not proved by the coefficient test");
  for (const auto& v : sigma_samples) {
    int cnt = positive_extreme_count(m, v);
    r.extreme_point_checks.push_back({v, cnt});
    if (cnt > 1)
      r.warnings.push_back("sigma g/l - h has " + std::to_string(cnt) + " positive extreme points at sigma=" +
                           rat_str(v));
  }
  return r;
}

Rat eval_rhs(const MSRSModel& m, int k, const std::vector<Rat>& x, const Rat& sigma) {
  auto ev = [](const MPoly& f, Var v, const Rat& val) {
    std::array<Rat, kNumVars> pt;
    pt[static_cast<int>(v)] = val;
    return f.eval(pt);
  };
  Rat s = 0;
  for (const auto& xm : x) s += ev(m.psi, Var::z, xm);
  Rat P = ev(m.A, Var::s, s);
  return -ev(m.l, Var::z, x[k]) + sigma * ev(m.g, Var::z, x[k]) / (P + ev(m.h, Var::z, x[k]));
}

NumericModel::NumericModel(const MSRSModel& m) : n(m.n), b_(m.c_denominator) {
  auto conv = [](const MPoly& f, Var v) {
    std::vector<double> out;
    for (const auto& c : f.univariate_coeffs(v)) out.push_back(c.get_d());
    return out;
  };
  l_ = conv(m.l, Var::z);
  g_ = conv(m.g, Var::z);
  h_ = conv(m.h, Var::z);
  psi_ = conv(m.psi, Var::z);
  A_ = conv(m.A, Var::s);
}

void NumericModel::eval(const std::vector<double>& c, double x, double& v, double& d) const {
  double u = b_ == 1 ? x : std::pow(x, 1.0 / b_);
  v = 0;
  double du = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    du = du * u + v;
    v = v * u + c[i];
  }
  d = b_ == 1 ? du : du / (b_ * std::pow(u, static_cast<double>(b_) - 1));
}

void NumericModel::A(double s, double& v, double& d) const {
  v = 0;
  d = 0;
  for (int i = static_cast<int>(A_.size()) - 1; i >= 0; --i) {
    d = d * s + v;
    v = v * s + A_[i];
  }
}

void NumericModel::rhs(const std::vector<double>& x, double sigma, std::vector<double>& f) const {
  f.assign(n, 0);
  double s = 0, v, d;
  for (int k = 0; k < n; ++k) {
    psi(x[k], v, d);
    s += v;
  }
  double P, dP;
  A(s, P, dP);
  for (int k = 0; k < n; ++k) {
    double lv, gv, hv;
    l(x[k], lv, d);
    g(x[k], gv, d);
    h(x[k], hv, d);
    f[k] = -lv + sigma * gv / (P + hv);
  }
}

void NumericModel::jacobian(const std::vector<double>& x, double sigma, std::vector<double>& J) const {
  J.assign(static_cast<size_t>(n) * n, 0);
  double s = 0, v;
  std::vector<double> dpsi(n);
  for (int k = 0; k < n; ++k) {
    psi(x[k], v, dpsi[k]);
    s += v;
  }
  double P, dA;
  A(s, P, dA);
  for (int k = 0; k < n; ++k) {
    double lv, dl, gv, dg, hv, dh;
    l(x[k], lv, dl);
    g(x[k], gv, dg);
    h(x[k], hv, dh);
    double den = P + hv;
    for (int j = 0; j < n; ++j) {
      double dPj = dA * dpsi[j];
      double val = -sigma * gv * dPj / (den * den);
      if (j == k) val += -dl + sigma * (dg * den - gv * dh) / (den * den);
      J[static_cast<size_t>(k) * n + j] = val;
    }
  }
}

}  // namespace msrs
