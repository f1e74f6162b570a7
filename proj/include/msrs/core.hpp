// Exact arithmetic substrate: rationals, sparse multivariate polynomials,
// rational functions.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msrs {

using Int = mpz_class;
using Rat = mpq_class;

enum class ErrorCode {
  parse = 1,
  bad_parameter,
  bad_multiplicity,
  not_divisible,
  division_by_zero,
  identically_zero,
  undecidable,
  degenerate_solution,
  infinite_solutions,
  empty_gap,
  validation,
  invalid_argument,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_name(ErrorCode c);

// Fixed global variable order. Lex order with sigma most significant.
enum class Var : uint8_t { sigma = 0, p, q, z, s, u, w };
constexpr int kNumVars = 7;
const char* var_name(Var v);
Var var_from_name(const std::string& name);

using Exps = std::array<uint32_t, kNumVars>;

Rat parse_rat(const std::string& text);
std::string rat_str(const Rat& r);
Rat rat_abs(const Rat& r);
int sgn(const Rat& r);
int sgn(const Int& r);
Int binomial(unsigned n, unsigned k);

class MPoly {
 public:
  using Term = std::pair<Exps, Rat>;

  MPoly() = default;
  MPoly(const Rat& c);  // NOLINT: constants convert implicitly
  MPoly(long c) : MPoly(Rat(c)) {}  // NOLINT

  static MPoly variable(Var v, uint32_t e = 1);
  static MPoly monomial(const Rat& c, const Exps& e);
  static MPoly from_terms(std::vector<Term> terms);
  // sum_k coeffs[k] * v^k
  static MPoly from_coeffs(Var v, const std::vector<MPoly>& coeffs);
  static MPoly univariate(Var v, const std::vector<Rat>& ascending);

  // Terms sorted by decreasing lex exponent order; no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // coefficient of the unit monomial
  uint32_t degree(Var v) const;
  uint32_t total_degree() const;
  bool has_var(Var v) const { return degree(v) > 0; }
  std::vector<Var> variables() const;
  bool is_univariate_in(Var v) const;
  const Term& leading_term() const { return terms_.front(); }

  // Coefficients of v^0..v^deg as polynomials free of v.
  std::vector<MPoly> coeffs_in(Var v) const;
  // Ascending rational coefficients; requires univariate in v.
  std::vector<Rat> univariate_coeffs(Var v) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly scaled(const Rat& c) const;
  MPoly pow(unsigned e) const;

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  Rat eval(const std::array<Rat, kNumVars>& point) const;
  double eval_double(const std::array<double, kNumVars>& point) const;

  // Positive rational c with this = c * (primitive integer polynomial whose
  // leading coefficient is positive).
  Rat content() const;
  MPoly primitive() const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

enum class PolyOp { add, sub, mul };
MPoly poly_arith(const MPoly& a, const MPoly& b, PolyOp op);
MPoly derivative(const MPoly& f, Var v);
using Bindings = std::map<Var, MPoly>;
MPoly substitute(const MPoly& f, const Bindings& b);
MPoly exact_div(const MPoly& f, const MPoly& g);
bool divides(const MPoly& g, const MPoly& f, MPoly* quotient = nullptr);
MPoly univariate_gcd(const MPoly& f, const MPoly& g, Var v);
MPoly squarefree_part(const MPoly& f, Var v);
MPoly resultant(const MPoly& f, const MPoly& g, Var v);

class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(const MPoly& num);  // NOLINT
  RatFunc(long c) : RatFunc(MPoly(c)) {}  // NOLINT
  RatFunc(const MPoly& num, const MPoly& den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  // Equality as functions: a.num*b.den == b.num*a.den.
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  Rat eval(const std::array<Rat, kNumVars>& point) const;
  double eval_double(const std::array<double, kNumVars>& point) const;
  std::string str() const;

 private:
  void normalize();
  MPoly num_, den_;
};

enum class RatOp { add, sub, mul, div };
RatFunc ratfunc_arith(const RatFunc& a, const RatFunc& b, RatOp op);
RatFunc derivative(const RatFunc& f, Var v);
RatFunc substitute(const RatFunc& f, const Bindings& b);

}  // namespace msrs
