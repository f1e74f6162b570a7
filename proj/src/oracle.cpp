#include "msrs/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "msrs/parallel.hpp"
#include "msrs/reduction.hpp"

namespace msrs {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool finite_positive(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v) || v <= 0) return false;
  return true;
}

// max |f_k / x_k|: a point drifting to the boundary has small f but not small f/x.
double max_rel(const std::vector<double>& f, const std::vector<double>& x) {
  double m = 0;
  for (size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k] / x[k]));
  return m;
}

// Damped Newton on f(x)/x in log coordinates, then a few plain steps in x.
bool newton(const NumericModel& nm, double sigma, std::vector<double>& x, const OracleOptions& opt) {
  int n = nm.n;
  std::vector<double> f, J;
  nm.rhs(x, sigma, f);
  double r = max_rel(f, x);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (!std::isfinite(r)) return false;
    if (r <= opt.residual_tol * 1e-2) break;
    nm.jacobian(x, sigma, J);
    Mat Jy(n, n);
    Vec F(n);
    for (int k = 0; k < n; ++k) {
      F(k) = f[k] / x[k];
      for (int j = 0; j < n; ++j) Jy(k, j) = J[static_cast<size_t>(k) * n + j] * x[j] / x[k];
      Jy(k, k) -= F(k);
    }
    Vec dy = Jy.fullPivLu().solve(-F);
    if (!dy.allFinite()) return false;
    double cap = dy.cwiseAbs().maxCoeff();
    if (cap > 2) dy *= 2 / cap;
    double t = 1;
    bool moved = false;
    for (int h = 0; h < 30; ++h, t /= 2) {
      std::vector<double> y(n);
      for (int k = 0; k < n; ++k) y[k] = x[k] * std::exp(t * dy(k));
      std::vector<double> fy;
      nm.rhs(y, sigma, fy);
      double ry = max_rel(fy, y);
      if (std::isfinite(ry) && ry < r) {
        x = y;
        f = fy;
        r = ry;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (t * cap < 1e-15) break;
  }
  if (!finite_positive(x) || !(r <= opt.residual_tol * 1e4)) return false;
  r = max_abs(f);
  for (int it = 0; it < 3; ++it) {
    nm.jacobian(x, sigma, J);
    Mat Jx(n, n);
    Vec F(n);
    for (int k = 0; k < n; ++k) {
      F(k) = f[k];
      for (int j = 0; j < n; ++j) Jx(k, j) = J[static_cast<size_t>(k) * n + j];
    }
    Vec dx = Jx.fullPivLu().solve(-F);
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = x[k] + dx(k);
    if (!finite_positive(y)) break;
    std::vector<double> fy;
    nm.rhs(y, sigma, fy);
    if (!(max_abs(fy) <= r)) break;
    x = y;
    f = fy;
    r = max_abs(fy);
  }
  return finite_positive(x) && r <= opt.residual_tol && max_rel(f, x) <= opt.residual_tol * 1e4;
}

void cluster(NumericEquilibrium& e) {
  std::vector<double> v = e.point;
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, int>> groups;
  for (double x : v) {
    if (!groups.empty() && std::abs(x - groups.back().first) <= 1e-6 * std::max(std::abs(x), 1e-300))
      ++groups.back().second;
    else
      groups.push_back({x, 1});
  }
  e.clusters = static_cast<int>(groups.size());
  if (groups.size() == 1) {
    e.template_i = 0;
    e.q = groups[0].first;
    e.p = e.q;
  } else if (groups.size() == 2) {
    const auto& a = groups[0];
    const auto& b = groups[1];
    bool a_is_p = a.second <= b.second;
    e.template_i = std::min(a.second, b.second);
    e.p = a_is_p ? a.first : b.first;
    e.q = a_is_p ? b.first : a.first;
  }
}

bool close_points(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  double d = 0, s = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]));
    s = std::max({s, std::abs(a[k]), std::abs(b[k])});
  }
  return d <= tol * std::max(s, 1e-300);
}

bool eig_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<double> faddeev_leverrier(const std::vector<double>& Jv, int n) {
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Jv[static_cast<size_t>(i) * n + j];
  std::vector<double> c(n + 1, 0);
  c[0] = 1;
  Mat M = Mat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    M = A * M + c[k - 1] * Mat::Identity(n, n);
    c[k] = -(A * M).trace() / k;
  }
  return c;
}

std::vector<double> hurwitz_minors(const std::vector<double>& c) {
  int n = static_cast<int>(c.size()) - 1;
  Mat H = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = 2 * j - i + 1;
      if (k >= 0 && k <= n) H(i, j) = c[k];
    }
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(H.topLeftCorner(k, k).determinant());
  return out;
}

NumericEquilibrium analyze_point(const MSRSModel& m, double sigma, const std::vector<double>& x) {
  NumericModel nm(m);
  int n = m.n;
  NumericEquilibrium e;
  e.point = x;
  std::vector<double> f, J;
  nm.rhs(x, sigma, f);
  e.residual = max_abs(f);
  nm.jacobian(x, sigma, J);
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = J[static_cast<size_t>(i) * n + j];
  Eigen::EigenSolver<Mat> es(A, false);
  for (int k = 0; k < n; ++k) e.eigenvalues.push_back(es.eigenvalues()(k));
  std::sort(e.eigenvalues.begin(), e.eigenvalues.end(), eig_less);
  e.stable = std::all_of(e.eigenvalues.begin(), e.eigenvalues.end(), [](auto l) { return l.real() < 0; });
  e.hurwitz_minors = hurwitz_minors(faddeev_leverrier(J, n));
  e.hurwitz_stable = std::all_of(e.hurwitz_minors.begin(), e.hurwitz_minors.end(), [](double d) { return d > 0; });
  cluster(e);
  return e;
}

std::vector<NumericEquilibrium> numeric_equilibria(const MSRSModel& m, const Rat& sigma_r, const OracleOptions& opt) {
  if (opt.starts < 1) throw Error(ErrorCode::invalid_argument, "starts must be at least 1");
  NumericModel nm(m);
  double sigma = sigma_r.get_d();
  int n = m.n;
  for (const auto& x : opt.start_points)
    if (static_cast<int>(x.size()) != n) throw Error(ErrorCode::invalid_argument, "start point of wrong dimension");
  std::vector<std::vector<double>> found(opt.starts);
  std::vector<char> ok(opt.starts, 0);
  int nchunks = std::max(1, std::min(opt.jobs, opt.starts));
  std::vector<std::function<void()>> tasks;
  for (int c = 0; c < nchunks; ++c)
    tasks.push_back([&, c] {
      for (int s = c; s < opt.starts; s += nchunks) {
        std::mt19937_64 rng(splitmix(opt.seed ^ splitmix(static_cast<std::uint64_t>(s))));
        std::uniform_real_distribution<double> u(std::log(opt.lo), std::log(opt.hi));
        std::vector<double> x(n);
        if (static_cast<size_t>(s) < opt.start_points.size()) {
          x = opt.start_points[s];
        } else if (opt.pattern_every > 0 && s % opt.pattern_every == 0) {
          double a = std::exp(u(rng)), b = std::exp(u(rng));
          std::vector<int> idx(n);
          for (int k = 0; k < n; ++k) idx[k] = k;
          std::shuffle(idx.begin(), idx.end(), rng);
          int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
          for (int k = 0; k < n; ++k) x[idx[k]] = k < i ? b : a;
        } else {
          for (auto& v : x) v = std::exp(u(rng));
        }
        if (newton(nm, sigma, x, opt)) {
          found[s] = x;
          ok[s] = 1;
        }
      }
    });
  run_tasks(tasks, opt.jobs);
  std::vector<std::vector<double>> pts;
  for (int s = 0; s < opt.starts; ++s)
    if (ok[s]) pts.push_back(found[s]);
  std::sort(pts.begin(), pts.end());
  std::vector<std::vector<double>> uniq;
  for (const auto& x : pts) {
    bool dup = false;
    for (const auto& y : uniq)
      if (close_points(x, y, opt.dedup_tol)) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(x);
  }
  std::vector<NumericEquilibrium> out;
  for (const auto& x : uniq) out.push_back(analyze_point(m, sigma, x));
  return out;
}

TheoremReport theorem_checks(const MSRSModel& m, const Rat& sigma_r, const std::vector<NumericEquilibrium>& eqs) {
  TheoremReport rep;
  double sigma = sigma_r.get_d();
  int n = m.n;
  ReducedDiagonal rd = diagonal_equilibrium(m);
  std::map<int, ReducedNonDiagonal> rn;
  double b = m.c_denominator;
  for (const auto& e : eqs) {
    if (!(e.residual <= 1e-10) || e.point.size() != static_cast<size_t>(n)) {
      ++rep.rejected;
      rep.messages.push_back("rejected: residual " + std::to_string(e.residual) + " is not an equilibrium");
      continue;
    }
    ++rep.checked;
    double mi = 0;
    for (const auto& l : e.eigenvalues) mi = std::max(mi, std::abs(l.imag()));
    rep.max_imag = std::max(rep.max_imag, mi);
    if (mi > 1e-8) {
      ++rep.real_spectrum_violations;
      rep.messages.push_back("complex eigenvalue, |Im| = " + std::to_string(mi));
    }
    if (e.clusters > 2) {
      ++rep.cluster_violations;
      rep.messages.push_back("more than two coordinate values");
    }
    if (e.stable != e.hurwitz_stable) {
      ++rep.stability_disagreements;
      rep.messages.push_back("eigenvalue and Hurwitz stability verdicts differ");
    }
    if (e.clusters > 2) continue;
    std::array<double, kNumVars> pt{};
    pt[static_cast<int>(Var::sigma)] = sigma;
    pt[static_cast<int>(Var::p)] = b == 1 ? e.p : std::pow(e.p, 1 / b);
    pt[static_cast<int>(Var::q)] = b == 1 ? e.q : std::pow(e.q, 1 / b);
    std::vector<std::complex<double>> pred;
    if (e.template_i == 0) {
      double g1 = rd.G1.eval_double(pt), g2 = rd.G2.eval_double(pt);
      for (int k = 0; k < n - 1; ++k) pred.push_back(g1);
      pred.push_back(g2);
    } else {
      int i = e.template_i;
      auto it = rn.find(i);
      if (it == rn.end()) it = rn.emplace(i, nondiagonal_equilibrium(m, i)).first;
      const auto& r = it->second;
      double g1 = r.G1.eval_double(pt), g2 = r.G2.eval_double(pt);
      double g3 = r.G3.eval_double(pt), g4 = r.G4.eval_double(pt);
      for (int k = 0; k < n - i - 1; ++k) pred.push_back(g1);
      for (int k = 0; k < i - 1; ++k) pred.push_back(g2);
      std::complex<double> disc = std::sqrt(std::complex<double>(g3 * g3 - 4 * g4));
      pred.push_back((g3 - disc) / 2.0);
      pred.push_back((g3 + disc) / 2.0);
    }
    std::sort(pred.begin(), pred.end(), eig_less);
    double err = 0;
    bool bad = false;
    for (int k = 0; k < n; ++k) {
      double d = std::abs(pred[k] - e.eigenvalues[k]);
      err = std::max(err, d);
      if (d > 1e-8 * std::max(1.0, std::abs(pred[k]))) bad = true;
    }
    rep.max_prediction_error = std::max(rep.max_prediction_error, err);
    if (bad) {
      ++rep.eigen_prediction_violations;
      rep.messages.push_back("eigenvalues differ from the template prediction by " + std::to_string(err));
    }
  }
  return rep;
}

OracleCounts count_numeric(const std::vector<NumericEquilibrium>& eqs) {
  OracleCounts c;
  for (const auto& e : eqs) {
    ++c.e;
    if (e.stable) ++c.s;
  }
  return c;
}

}  // namespace msrs
