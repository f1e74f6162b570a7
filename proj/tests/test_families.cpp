#include <doctest.h>

#include "msrs/classify.hpp"
#include "msrs/elimination.hpp"
#include "msrs/oracle.hpp"

using namespace msrs;

namespace {

const MPoly P = MPoly::variable(Var::p);
const MPoly Q = MPoly::variable(Var::q);
const MPoly S = MPoly::variable(Var::sigma);

MSRSModel mi(int n) {
  return builtin_model(Family::mutual_inhibition, {{"n", Rat(n)}, {"c", Rat(2)}, {"alpha", Rat(1)}});
}

MSRSModel bhlh(int n) { return builtin_model(Family::bhlh, {{"n", Rat(n)}, {"K2", Rat(1)}, {"a_t", Rat(1)}}); }

void agrees_with_oracle(const MSRSModel& m) {
  ClassificationResult r = classify(m);
  REQUIRE(r.samples.size() == r.sample_counts.size());
  for (size_t k = 0; k < r.samples.size(); ++k) {
    auto eqs = numeric_equilibria(m, r.samples[k]);
    auto c = count_numeric(eqs);
    INFO(m.label << " sigma=" << rat_str(r.samples[k]));
    CHECK(c.e == r.sample_counts[k].e);
    CHECK(c.s == r.sample_counts[k].s);
    CHECK(theorem_checks(m, r.samples[k], eqs).ok());
  }
}

}  // namespace

TEST_CASE("strip_monomial removes the monomial content") {
  MPoly f = P.pow(2) * Q * (P + Q + MPoly(1));
  CHECK(strip_monomial(f) == P + Q + MPoly(1));
  CHECK(strip_monomial(P + MPoly(1)) == P + MPoly(1));
  CHECK(strip_monomial(S * P) == MPoly(1));
}

TEST_CASE("common factor of constant sign is cancelled") {
  MPoly pos = P * P + MPoly(2) * Q * Q + MPoly(1);
  MPoly f = pos * (P * Q - P - Q), g = pos * (P - MPoly(2) * Q);
  CHECK(common_factor(f, g, Var::q) == pos);
  CHECK(common_factor(P - Q, P + Q, Var::q) == MPoly(1));
  MPoly a = f, b = g;
  REQUIRE(cancel_definite_common_factor(a, b, Var::q));
  CHECK(a == P * Q - P - Q);
  CHECK(b == P - MPoly(2) * Q);
  // A sign-changing common factor stays.
  MPoly c = (P - Q) * (P + MPoly(1)), d = (P - Q) * (Q + MPoly(3));
  CHECK_FALSE(cancel_definite_common_factor(c, d, Var::q));
}

TEST_CASE("mutual inhibition n=3 boundaries and bands") {
  ClassificationResult r = classify(mi(3));
  auto bs = r.boundaries();
  REQUIRE(bs.size() == 2);
  CHECK(bs[1].lo == Rat(13, 4));
  CHECK(bs[0].lo.get_d() == doctest::Approx(3.070749).epsilon(1e-6));
  REQUIRE(r.bands.size() == 3);
  CHECK(r.bands[0] == Counts{1, 1});
  CHECK(r.bands[1] == Counts{7, 4});
  CHECK(r.bands[2] == Counts{7, 3});
  CHECK(r.all_verified());
}

TEST_CASE("mutual inhibition and bhlh agree with the oracle") {
  for (int n : {2, 3}) {
    agrees_with_oracle(mi(n));
    agrees_with_oracle(bhlh(n));
  }
}

TEST_CASE("points drifting to the boundary are not equilibria") {
  // No positive equilibrium exists at sigma = 1; f is tiny near 0 but f/x is not.
  OracleOptions o;
  o.starts = 2000;
  CHECK(numeric_equilibria(bhlh(3), Rat(1), o).empty());
}
