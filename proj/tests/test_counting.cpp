#include <doctest.h>

#include "msrs/counting.hpp"
#include "msrs/reduction.hpp"

using namespace msrs;

namespace {

const MPoly Qv = MPoly::variable(Var::q);

MSRSModel sd(int n, const char* c) {
  return builtin_model(Family::simultaneous_decision, {{"n", Rat(n)}, {"c", parse_rat(c)}});
}

MPoly at(const MPoly& f, const Rat& v) { return substitute(f, {{Var::sigma, MPoly(v)}}); }

ZPoly zp(std::vector<long> asc) {
  std::vector<Int> c;
  for (long a : asc) c.push_back(a);
  return ZPoly(c);
}

std::vector<CertifiedBox> boxes(const MSRSModel& m, int i, const Rat& v) {
  TemplateCurve t = template_curve(m, i);
  return solve_bivariate(at(t.NF1, v), t.counting_uses_C ? t.C : at(t.Delta, v));
}

}  // namespace

TEST_CASE("sign_at_root examples") {
  ZPoly f = zp({1, -1, 0, 0, 0, -3});  // 1 - q - 3q^5, sigma = 1
  auto roots = isolate_positive_roots(f);
  REQUIRE(roots.size() == 1);
  MPoly q4 = Qv.pow(4);
  RatFunc G1 = RatFunc(MPoly(-1)) + RatFunc(MPoly(4) * q4, MPoly(1) + MPoly(3) * q4);
  RatFunc G2 = RatFunc(MPoly(-1)) - RatFunc(MPoly(12) * q4, MPoly(1) + MPoly(3) * q4);
  CHECK(sign_at_root(G1, f, Var::q, roots[0]) == Sign::negative);
  CHECK(sign_at_root(G2, f, Var::q, roots[0]) == Sign::negative);
  // Numerator shares the root.
  RatFunc Z(to_mpoly(f, Var::q) * (Qv + MPoly(2)), MPoly(1) + Qv * Qv);
  CHECK(sign_at_root(Z, f, Var::q, roots[0]) == Sign::zero);
  // Hand check: the root is below 1 so q - 1 < 0 and q + 1 > 0.
  CHECK(sign_at_root(RatFunc(Qv - MPoly(1)), f, Var::q, roots[0]) == Sign::negative);
  CHECK(sign_at_root(RatFunc(Qv + MPoly(1)), f, Var::q, roots[0]) == Sign::positive);
}

TEST_CASE("sign_at_root at a rational root") {
  ZPoly f = zp({-2, 1});  // q = 2
  auto roots = isolate_positive_roots(f);
  REQUIRE(roots.size() == 1);
  CHECK(sign_at_root(RatFunc(Qv - MPoly(2)), f, Var::q, roots[0]) == Sign::zero);
  CHECK(sign_at_root(RatFunc(Qv - MPoly(3)), f, Var::q, roots[0]) == Sign::negative);
}

TEST_CASE("count_diagonal examples") {
  auto m = sd(4, "4");
  auto a = count_diagonal(m, Rat(1));
  CHECK(a.e_raw == 1);
  CHECK(a.s_raw == 1);
  auto b = count_diagonal(m, Rat(5));
  CHECK(b.e_raw == 1);
  CHECK(b.s_raw == 0);
  for (auto [n, c] : {std::pair{3, "3"}, {5, "5"}, {4, "2"}}) {
    auto d = count_diagonal(sd(n, c), Rat(1));
    CHECK(d.e_raw == 1);
    CHECK(d.s_raw == 1);
  }
}

TEST_CASE("solve_bivariate box counts") {
  auto m = sd(4, "4");
  CHECK(boxes(m, 1, Rat(2)).size() == 2);
  CHECK(boxes(m, 2, Rat(1)).size() == 0);
  CHECK(boxes(m, 2, Rat(5)).size() == 2);
}

TEST_CASE("certified boxes are disjoint and off the diagonal") {
  for (auto [n, c, i, v] : {std::tuple{4, "4", 1, 2}, {4, "4", 2, 5}, {5, "5", 2, 4}, {6, "6", 3, 7}}) {
    auto bs = boxes(sd(n, c), i, Rat(v));
    for (size_t a = 0; a < bs.size(); ++a) {
      CHECK(bs[a].status == BoxStatus::certified_unique);
      CHECK(bs[a].p.disjoint(bs[a].q));
      for (size_t b = a + 1; b < bs.size(); ++b) CHECK((bs[a].p.disjoint(bs[b].p) || bs[a].q.disjoint(bs[b].q)));
    }
  }
}

TEST_CASE("equilibrium_counting examples and aggregation") {
  auto m = sd(4, "4");
  CHECK(equilibrium_counting(m, Rat(1)) == Counts{1, 1});
  CHECK(equilibrium_counting(m, Rat(2)) == Counts{9, 5});
  CHECK(equilibrium_counting(m, Rat(5)) == Counts{15, 4});
  // e = diag + C(4,1) t1 + C(4,2)/2 t2
  for (long v : {2, 5}) {
    auto d = count_diagonal(m, Rat(v));
    auto t1 = count_template(m, template_curve(m, 1), Rat(v));
    auto t2 = count_template(m, template_curve(m, 2), Rat(v));
    auto c = equilibrium_counting(m, Rat(v));
    CHECK(c.e == d.e_raw + 4 * t1.e_raw + 6 * t2.e_raw / 2);
    CHECK(c.s == d.s_raw + 4 * t1.s_raw + 6 * t2.s_raw / 2);
  }
  auto t = count_template(m, template_curve(m, 1), Rat(2));
  CHECK(t.e_raw == 2);
  CHECK(t.s_raw == 1);
}

TEST_CASE("symmetric template raw counts are even") {
  for (auto [n, c, v] : {std::tuple{4, "4", 5}, {4, "4", 3}, {6, "6", 7}, {2, "3", 4}}) {
    auto m = sd(n, c);
    auto t = count_template(m, template_curve(m, n / 2), Rat(v));
    CHECK(t.e_raw % 2 == 0);
    CHECK(t.s_raw % 2 == 0);
  }
}

TEST_CASE("s <= e and schedule independence") {
  auto m = sd(5, "5");
  CountingOptions par;
  par.jobs = 3;
  for (const char* v : {"1/2", "1", "2", "4", "11/2", "9"}) {
    Counts a = equilibrium_counting(m, parse_rat(v));
    Counts b = equilibrium_counting(m, parse_rat(v), par);
    CHECK(a.s <= a.e);
    CHECK(a == b);
  }
}

TEST_CASE("rational cooperativity: c = 4/1 equals c = 4") {
  auto a = sd(4, "4/1"), b = sd(4, "8/2"), c = sd(4, "4");
  for (long v : {1, 2, 5}) {
    CHECK(equilibrium_counting(a, Rat(v)) == equilibrium_counting(c, Rat(v)));
    CHECK(equilibrium_counting(b, Rat(v)) == equilibrium_counting(c, Rat(v)));
  }
}

TEST_CASE("counting at a degenerate sigma names the sample point") {
  auto m = sd(4, "4");
  try {
    equilibrium_counting(m, Rat(4));  // the diagonal equilibrium has a zero eigenvalue here
    FAIL("expected DegenerateSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_solution);
    CHECK(std::string(e.what()).find("sigma=4") != std::string::npos);
  }
}
