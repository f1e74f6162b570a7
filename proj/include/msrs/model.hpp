// Multistable regulatory systems:
//   dx_k/dt = -l(x_k) + sigma g(x_k) / (P(x) + h(x_k)),  P = A(sum_m psi(x_m)).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "msrs/core.hpp"

namespace msrs {

enum class Family { simultaneous_decision, mutual_inhibition, bhlh, custom };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// l, g, h, psi are polynomials in z, A in s. For cooperativity c = a/b the
// polynomials are written in u = x^(1/b) and c_denominator = b; every
// polynomial then describes the function x -> poly(x^(1/b)).
struct MSRSModel {
  int n = 2;
  MPoly l, g, h, A, psi;
  unsigned c_denominator = 1;
  std::string label;

  // Family bookkeeping so builtins round-trip through the model file.
  Family family = Family::custom;
  Rat c = 0, alpha = 0, K2 = 0, a_t = 0;
};

using Params = std::map<std::string, Rat>;

MSRSModel builtin_model(Family family, const Params& params);
MSRSModel parse_model(const std::string& text);
std::string serialize_model(const MSRSModel& m);

struct ExtremeCheck {
  Rat sigma;
  int positive_extremes;
};

struct ValidationReport {
  bool denominator_positivity = false;
  std::vector<ExtremeCheck> extreme_point_checks;
  std::vector<std::string> warnings;
  bool extremes_ok() const {
    for (const auto& e : extreme_point_checks)
      if (e.positive_extremes > 1) return false;
    return true;
  }
};

ValidationReport validate_model(const MSRSModel& m, const std::vector<Rat>& sigma_samples);
// Positive odd-multiplicity critical points of z -> sigma g/l - h.
int positive_extreme_count(const MSRSModel& m, const Rat& sigma);

// All coefficients nonnegative with a positive constant term.
bool positive_on_orthant(const MPoly& f);

// Exact evaluation of f_k (0-based k) at a point given in model coordinates
// (u-coordinates when c_denominator > 1).
Rat eval_rhs(const MSRSModel& m, int k, const std::vector<Rat>& point, const Rat& sigma);

// Numeric view of the model in x-coordinates, used by the oracle.
struct NumericModel {
  explicit NumericModel(const MSRSModel& m);
  int n;
  // value and x-derivative at x > 0
  void l(double x, double& v, double& d) const { eval(l_, x, v, d); }
  void g(double x, double& v, double& d) const { eval(g_, x, v, d); }
  void h(double x, double& v, double& d) const { eval(h_, x, v, d); }
  void psi(double x, double& v, double& d) const { eval(psi_, x, v, d); }
  void A(double s, double& v, double& d) const;
  void rhs(const std::vector<double>& x, double sigma, std::vector<double>& f) const;
  void jacobian(const std::vector<double>& x, double sigma, std::vector<double>& J) const;

 private:
  void eval(const std::vector<double>& c, double x, double& v, double& d) const;
  std::vector<double> l_, g_, h_, psi_, A_;
  unsigned b_;
};

}  // namespace msrs
