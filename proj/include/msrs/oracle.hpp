// Floating-point cross-check: multistart Newton on the full system, Jacobian
// spectra and Routh-Hurwitz minors. It can undercount; it never proves.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "msrs/model.hpp"

namespace msrs {

struct NumericEquilibrium {
  std::vector<double> point;  // x-coordinates
  double residual = 0;        // max |f_k|
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> hurwitz_minors;  // Delta_1..Delta_n
  bool stable = false;                 // by eigenvalue real parts
  bool hurwitz_stable = false;         // all minors positive
  // Coordinate clustering: i coordinates equal p, the others q. i = 0 for
  // the diagonal, else i <= n/2.
  int template_i = 0;
  double p = 0, q = 0;
  int clusters = 0;
};

struct OracleOptions {
  int starts = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
  int max_iter = 100;
  double residual_tol = 1e-10;
  // Every pattern_every-th random start has two distinct coordinate values
  // (0 disables). Newton keeps such points on their symmetric subspace.
  int pattern_every = 10;
  double dedup_tol = 1e-6;
  double lo = 1e-3, hi = 1e2;
  // Used in order for the first starts instead of random points.
  std::vector<std::vector<double>> start_points;
};

// Characteristic polynomial coefficients c_0 = 1, c_1..c_n of a row-major
// n x n matrix (det(lambda I - J) = sum c_k lambda^(n-k)).
std::vector<double> faddeev_leverrier(const std::vector<double>& J, int n);
// Leading principal minors of the Hurwitz matrix of sum c_k lambda^(n-k).
std::vector<double> hurwitz_minors(const std::vector<double>& c);

// Residual, spectrum, minors and template of one point.
NumericEquilibrium analyze_point(const MSRSModel& m, double sigma, const std::vector<double>& x);

std::vector<NumericEquilibrium> numeric_equilibria(const MSRSModel& m, const Rat& sigma,
                                                   const OracleOptions& opt = {});

struct TheoremReport {
  int checked = 0;
  int rejected = 0;  // residual precondition failed
  int real_spectrum_violations = 0;
  int cluster_violations = 0;
  int eigen_prediction_violations = 0;
  int stability_disagreements = 0;
  double max_imag = 0;
  double max_prediction_error = 0;
  std::vector<std::string> messages;
  bool ok() const {
    return rejected == 0 && real_spectrum_violations == 0 && cluster_violations == 0 &&
           eigen_prediction_violations == 0 && stability_disagreements == 0;
  }
};

TheoremReport theorem_checks(const MSRSModel& m, const Rat& sigma, const std::vector<NumericEquilibrium>& eqs);

struct OracleCounts {
  long e = 0, s = 0;
};
OracleCounts count_numeric(const std::vector<NumericEquilibrium>& eqs);

}  // namespace msrs
