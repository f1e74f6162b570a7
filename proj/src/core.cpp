#include "msrs/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "msrs/upoly.hpp"

namespace msrs {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::bad_parameter: return "BadParameter";
    case ErrorCode::bad_multiplicity: return "BadMultiplicity";
    case ErrorCode::not_divisible: return "NotDivisible";
    case ErrorCode::division_by_zero: return "DivisionByZeroFunction";
    case ErrorCode::identically_zero: return "IdenticallyZero";
    case ErrorCode::undecidable: return "Undecidable";
    case ErrorCode::degenerate_solution: return "DegenerateSolution";
    case ErrorCode::infinite_solutions: return "InfiniteSolutions";
    case ErrorCode::empty_gap: return "EmptyGap";
    case ErrorCode::validation: return "ValidationFailure";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::internal: return "InternalError";
  }
  return "Error";
}

static const char* kVarNames[kNumVars] = {"sigma", "p", "q", "z", "s", "u", "w"};

const char* var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

Var var_from_name(const std::string& name) {
  for (int i = 0; i < kNumVars; ++i)
    if (name == kVarNames[i]) return static_cast<Var>(i);
  throw Error(ErrorCode::invalid_argument, "unknown variable " + name);
}

Rat parse_rat(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw Error(ErrorCode::parse, "empty rational");
  auto valid_int = [](const std::string& s) {
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return s[0] == '+' ? s.substr(1) : s; };
  size_t slash = t.find('/');
  if (slash == std::string::npos) {
    // Plain decimals such as 1e-9 or 0.25 are accepted and converted exactly.
    if (valid_int(t)) return Rat(Int(strip_plus(t), 10));
    size_t epos = t.find_first_of("eE");
    std::string mant = t.substr(0, epos);
    long ex = 0;
    if (epos != std::string::npos) {
      std::string es = t.substr(epos + 1);
      if (es.empty() || !valid_int(es)) throw Error(ErrorCode::parse, "bad rational '" + text + "'");
      ex = std::stol(es);
    }
    size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      ex -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits == "-" || digits == "+" || digits.empty() || !valid_int(digits))
      throw Error(ErrorCode::parse, "bad rational '" + text + "'");
    Rat r(Int(strip_plus(digits), 10));
    Int ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(ex)));
    if (ex >= 0) r *= ten_pow; else r /= ten_pow;
    r.canonicalize();
    return r;
  }
  std::string a = t.substr(0, slash), b = t.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b)) throw Error(ErrorCode::parse, "bad rational '" + text + "'");
  Int den(strip_plus(b), 10);
  if (den == 0) throw Error(ErrorCode::parse, "zero denominator in '" + text + "'");
  Rat r(Int(strip_plus(a), 10), den);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }
int sgn(const Int& r) { return mpz_sgn(r.get_mpz_t()); }

Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(const Rat& c) {
  if (c != 0) terms_.push_back({Exps{}, c});
}

MPoly MPoly::variable(Var v, uint32_t e) {
  Exps x{};
  x[static_cast<int>(v)] = e;
  return monomial(1, x);
}

MPoly MPoly::monomial(const Rat& c, const Exps& e) {
  MPoly r;
  if (c != 0) r.terms_.push_back({e, c});
  return r;
}

static bool term_greater(const MPoly::Term& a, const MPoly::Term& b) { return a.first > b.first; }

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MPoly r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
    } else {
      if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
  return r;
}

MPoly MPoly::from_coeffs(Var v, const std::vector<MPoly>& coeffs) {
  std::vector<Term> all;
  int vi = static_cast<int>(v);
  for (size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Exps e = t.first;
      e[vi] += static_cast<uint32_t>(k);
      all.push_back({e, t.second});
    }
  return from_terms(std::move(all));
}

MPoly MPoly::univariate(Var v, const std::vector<Rat>& ascending) {
  std::vector<Term> all;
  for (size_t k = 0; k < ascending.size(); ++k)
    if (ascending[k] != 0) {
      Exps e{};
      e[static_cast<int>(v)] = static_cast<uint32_t>(k);
      all.push_back({e, ascending[k]});
    }
  return from_terms(std::move(all));
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exps{});
}

Rat MPoly::constant_value() const {
  if (!terms_.empty() && terms_.back().first == Exps{}) return terms_.back().second;
  return 0;
}

uint32_t MPoly::degree(Var v) const {
  uint32_t d = 0;
  int vi = static_cast<int>(v);
  for (const auto& t : terms_) d = std::max(d, t.first[vi]);
  return d;
}

uint32_t MPoly::total_degree() const {
  uint32_t d = 0;
  for (const auto& t : terms_) {
    uint32_t s = 0;
    for (auto e : t.first) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::vector<Var> MPoly::variables() const {
  std::vector<Var> out;
  for (int i = 0; i < kNumVars; ++i)
    if (degree(static_cast<Var>(i)) > 0) out.push_back(static_cast<Var>(i));
  return out;
}

bool MPoly::is_univariate_in(Var v) const {
  int vi = static_cast<int>(v);
  for (const auto& t : terms_)
    for (int i = 0; i < kNumVars; ++i)
      if (i != vi && t.first[i] != 0) return false;
  return true;
}

std::vector<MPoly> MPoly::coeffs_in(Var v) const {
  int vi = static_cast<int>(v);
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    Exps e = t.first;
    uint32_t k = e[vi];
    e[vi] = 0;
    buckets[k].push_back({e, t.second});
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

std::vector<Rat> MPoly::univariate_coeffs(Var v) const {
  if (!is_univariate_in(v))
    throw Error(ErrorCode::invalid_argument, std::string("polynomial is not univariate in ") + var_name(v));
  std::vector<Rat> out(is_zero() ? 0 : degree(v) + 1);
  for (const auto& t : terms_) out[t.first[static_cast<int>(v)]] = t.second;
  return out;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

static std::vector<MPoly::Term> merge_terms(const std::vector<MPoly::Term>& a,
                                            const std::vector<MPoly::Term>& b, bool subtract) {
  std::vector<MPoly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.push_back({b[j].first, subtract ? Rat(-b[j].second) : b[j].second});
      ++j;
    } else {
      Rat c = subtract ? Rat(a[i].second - b[j].second) : Rat(a[i].second + b[j].second);
      if (c != 0) out.push_back({a[i].first, c});
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.terms_.size() == 1 && a.terms_[0].first == Exps{}) return b.scaled(a.terms_[0].second);
  if (b.terms_.size() == 1 && b.terms_[0].first == Exps{}) return a.scaled(b.terms_[0].second);
  std::map<Exps, Rat, std::greater<Exps>> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Exps e;
      for (int i = 0; i < kNumVars; ++i) e[i] = x.first[i] + y.first[i];
      auto [it, fresh] = acc.try_emplace(e);
      if (fresh) {
        it->second = x.second * y.second;
      } else {
        it->second += x.second * y.second;
      }
    }
  MPoly r;
  r.terms_.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) r.terms_.push_back({kv.first, kv.second});
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly MPoly::scaled(const Rat& c) const {
  if (c == 0) return MPoly();
  MPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

Rat MPoly::eval(const std::array<Rat, kNumVars>& point) const {
  Rat acc = 0;
  for (const auto& t : terms_) {
    Rat m = t.second;
    for (int i = 0; i < kNumVars; ++i)
      if (t.first[i]) {
        Rat pw;
        mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), t.first[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), t.first[i]);
        m *= pw;
      }
    acc += m;
  }
  return acc;
}

double MPoly::eval_double(const std::array<double, kNumVars>& point) const {
  double acc = 0;
  for (const auto& t : terms_) {
    double m = t.second.get_d();
    for (int i = 0; i < kNumVars; ++i)
      if (t.first[i]) m *= std::pow(point[i], static_cast<double>(t.first[i]));
    acc += m;
  }
  return acc;
}

Rat MPoly::content() const {
  if (is_zero()) return 0;
  Int g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  }
  Rat c(g, l);
  c.canonicalize();
  if (terms_.front().second < 0) c = -c;
  return c;
}

MPoly MPoly::primitive() const {
  if (is_zero()) return MPoly();
  Rat c = content();
  return scaled(Rat(1) / c);
}

static std::string exps_str(const Exps& e) {
  std::string s;
  for (int i = 0; i < kNumVars; ++i)
    if (e[i]) {
      if (!s.empty()) s += "*";
      s += kVarNames[i];
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
  return s;
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.second;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string m = exps_str(t.first);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += rat_str(c);
    } else if (c == 1) {
      out += m;
    } else {
      out += rat_str(c) + "*" + m;
    }
  }
  return out;
}

MPoly poly_arith(const MPoly& a, const MPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  return MPoly();
}

MPoly derivative(const MPoly& f, Var v) {
  int vi = static_cast<int>(v);
  std::vector<MPoly::Term> out;
  for (const auto& t : f.terms()) {
    if (t.first[vi] == 0) continue;
    Exps e = t.first;
    Rat c = t.second * Rat(e[vi]);
    e[vi] -= 1;
    out.push_back({e, c});
  }
  return MPoly::from_terms(std::move(out));
}

MPoly substitute(const MPoly& f, const Bindings& b) {
  if (b.empty()) return f;
  // Horner-free: cache powers of each bound polynomial.
  std::map<std::pair<int, uint32_t>, MPoly> cache;
  auto power = [&](Var v, uint32_t e) -> const MPoly& {
    auto key = std::make_pair(static_cast<int>(v), e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    MPoly val = b.at(v).pow(e);
    return cache.emplace(key, std::move(val)).first->second;
  };
  std::vector<MPoly::Term> plain;
  MPoly acc;
  for (const auto& t : f.terms()) {
    Exps rest = t.first;
    MPoly m(t.second);
    bool bound = false;
    for (const auto& [v, val] : b) {
      int vi = static_cast<int>(v);
      if (rest[vi] == 0) continue;
      bound = true;
      m *= power(v, rest[vi]);
      rest[vi] = 0;
    }
    if (!bound) {
      plain.push_back(t);
      continue;
    }
    acc += m * MPoly::monomial(1, rest);
  }
  return acc + MPoly::from_terms(std::move(plain));
}

static bool exps_divides(const Exps& a, const Exps& b) {
  for (int i = 0; i < kNumVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool divides(const MPoly& g, const MPoly& f, MPoly* quotient) {
  if (g.is_zero()) throw Error(ErrorCode::division_by_zero, "division by the zero polynomial");
  if (g.is_constant()) {
    if (quotient) *quotient = f.scaled(Rat(1) / g.constant_value());
    return true;
  }
  MPoly r = f;
  std::vector<MPoly::Term> q;
  const auto& lg = g.leading_term();
  while (!r.is_zero()) {
    const auto& lr = r.leading_term();
    if (!exps_divides(lg.first, lr.first)) return false;
    Exps e;
    for (int i = 0; i < kNumVars; ++i) e[i] = lr.first[i] - lg.first[i];
    Rat c = lr.second / lg.second;
    q.push_back({e, c});
    r -= g * MPoly::monomial(c, e);
  }
  if (quotient) *quotient = MPoly::from_terms(std::move(q));
  return true;
}

MPoly exact_div(const MPoly& f, const MPoly& g) {
  MPoly q;
  if (!divides(g, f, &q))
    throw Error(ErrorCode::not_divisible, "(" + f.str() + ") is not divisible by (" + g.str() + ")");
  return q;
}

static void require_univariate(const MPoly& f, Var v) {
  if (!f.is_univariate_in(v))
    throw Error(ErrorCode::invalid_argument,
                std::string("expected a univariate polynomial in ") + var_name(v));
}

MPoly univariate_gcd(const MPoly& f, const MPoly& g, Var v) {
  require_univariate(f, v);
  require_univariate(g, v);
  if (f.is_zero() && g.is_zero()) return MPoly();
  ZPoly a = f.is_zero() ? ZPoly() : zpoly_from_mpoly(f, v);
  ZPoly b = g.is_zero() ? ZPoly() : zpoly_from_mpoly(g, v);
  ZPoly d = gcd(a, b);
  MPoly r = to_mpoly(d, v);
  return r.scaled(Rat(1) / Rat(d.lc()));
}

MPoly squarefree_part(const MPoly& f, Var v) {
  require_univariate(f, v);
  if (f.is_zero()) throw Error(ErrorCode::invalid_argument, "squarefree part of zero");
  return to_mpoly(squarefree(zpoly_from_mpoly(f, v)), v);
}

MPoly resultant(const MPoly& f, const MPoly& g, Var v) {
  RPoly<MPoly> a = f.coeffs_in(v), b = g.coeffs_in(v);
  if (f.is_zero() || g.is_zero()) return MPoly();
  return resultant_generic<MPoly>(a, b);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const MPoly& num) : num_(num), den_(1) { normalize(); }

RatFunc::RatFunc(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(ErrorCode::division_by_zero, "rational function with zero denominator");
  normalize();
}

static std::vector<Var> single_var(const MPoly& a, const MPoly& b) {
  std::vector<Var> va = a.variables(), vb = b.variables();
  for (Var x : vb)
    if (std::find(va.begin(), va.end(), x) == va.end()) va.push_back(x);
  return va;
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  // Scale so both are integer polynomials, the denominator primitive with
  // positive leading coefficient.
  Rat cd = den_.content();
  num_ = num_.scaled(Rat(1) / cd);
  den_ = den_.scaled(Rat(1) / cd);
  std::vector<Var> vars = single_var(num_, den_);
  if (vars.size() == 1 && !den_.is_constant()) {
    MPoly d = univariate_gcd(num_, den_, vars[0]);
    if (!d.is_constant()) {
      num_ = exact_div(num_, d);
      den_ = exact_div(den_, d);
      Rat c = den_.content();
      num_ = num_.scaled(Rat(1) / c);
      den_ = den_.scaled(Rat(1) / c);
    }
  } else if (!den_.is_constant() && divides(den_, num_, &num_)) {
    den_ = MPoly(1);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  MPoly k;
  if (!a.den_.is_constant() && divides(a.den_, b.den_, &k)) return RatFunc(a.num_ * k + b.num_, b.den_);
  if (!b.den_.is_constant() && divides(b.den_, a.den_, &k)) return RatFunc(a.num_ + b.num_ * k, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) throw Error(ErrorCode::division_by_zero, "division by the zero function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

Rat RatFunc::eval(const std::array<Rat, kNumVars>& point) const {
  Rat d = den_.eval(point);
  if (d == 0) throw Error(ErrorCode::division_by_zero, "denominator vanishes at evaluation point");
  return num_.eval(point) / d;
}

double RatFunc::eval_double(const std::array<double, kNumVars>& point) const {
  return num_.eval_double(point) / den_.eval_double(point);
}

std::string RatFunc::str() const {
  if (den_ == MPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc ratfunc_arith(const RatFunc& a, const RatFunc& b, RatOp op) {
  switch (op) {
    case RatOp::add: return a + b;
    case RatOp::sub: return a - b;
    case RatOp::mul: return a * b;
    case RatOp::div: return a / b;
  }
  return RatFunc();
}

RatFunc derivative(const RatFunc& f, Var v) {
  MPoly dn = derivative(f.num(), v), dd = derivative(f.den(), v);
  if (dd.is_zero()) return RatFunc(dn, f.den());
  return RatFunc(dn * f.den() - f.num() * dd, f.den() * f.den());
}

RatFunc substitute(const RatFunc& f, const Bindings& b) {
  return RatFunc(substitute(f.num(), b), substitute(f.den(), b));
}

}  // namespace msrs
