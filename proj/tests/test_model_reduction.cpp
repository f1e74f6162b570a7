#include <doctest.h>

#include <algorithm>
#include <random>

#include "msrs/model.hpp"
#include "msrs/reduction.hpp"

using namespace msrs;

namespace {

const MPoly P = MPoly::variable(Var::p);
const MPoly Q = MPoly::variable(Var::q);
const MPoly S = MPoly::variable(Var::sigma);
const MPoly Z = MPoly::variable(Var::z);
const MPoly Sv = MPoly::variable(Var::s);

MSRSModel sd(int n, const std::string& c) {
  return builtin_model(Family::simultaneous_decision, {{"n", Rat(n)}, {"c", parse_rat(c)}});
}

std::array<Rat, kNumVars> pt(const Rat& sigma, const Rat& p, const Rat& q) {
  std::array<Rat, kNumVars> a{};
  a[static_cast<int>(Var::sigma)] = sigma;
  a[static_cast<int>(Var::p)] = p;
  a[static_cast<int>(Var::q)] = q;
  return a;
}

Rat random_pos(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 13);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("builtin families") {
  MSRSModel m = sd(4, "4");
  CHECK(m.l == Z);
  CHECK(m.g == MPoly(1));
  CHECK(m.h == -Z.pow(4));
  CHECK(m.psi == Z.pow(4));
  CHECK(m.A == MPoly(1) + Sv);

  MSRSModel mi = builtin_model(Family::mutual_inhibition, {{"n", 3}, {"c", 2}, {"alpha", 1}});
  CHECK(mi.l == Z - MPoly(1));
  CHECK(mi.g == Z.pow(2));
  CHECK(mi.h.is_zero());
  CHECK(mi.psi == Z.pow(2));

  MSRSModel bh = builtin_model(Family::bhlh, {{"n", 2}, {"K2", 1}, {"a_t", 1}});
  CHECK(bh.l == Z);
  CHECK(bh.g == Z.pow(2));
  CHECK(bh.h == Z.pow(2));
  CHECK(bh.psi == Z);
  CHECK(bh.A == (MPoly(1) + Sv).pow(2));

  MSRSModel bh2 = builtin_model(Family::bhlh, {{"n", 2}, {"K2", 2}, {"a_t", Rat(1, 2)}});
  CHECK(bh2.A == (MPoly(1) + Sv).pow(2).scaled(8));

  auto bad = [](Family f, const Params& p) {
    try {
      builtin_model(f, p);
    } catch (const Error& e) {
      return e.code() == ErrorCode::bad_parameter;
    }
    return false;
  };
  CHECK(bad(Family::simultaneous_decision, {{"n", 4}, {"c", 0}}));
  CHECK(bad(Family::simultaneous_decision, {{"n", 1}, {"c", 2}}));
  CHECK(bad(Family::simultaneous_decision, {{"n", -3}, {"c", 2}}));
  CHECK(bad(Family::bhlh, {{"n", 2}, {"K2", 0}, {"a_t", 1}}));
  CHECK(bad(Family::bhlh, {{"n", 2}, {"K2", 1}, {"a_t", -1}}));
  CHECK(bad(Family::mutual_inhibition, {{"n", 3}, {"c", 2}, {"alpha", -1}}));
}

TEST_CASE("rational cooperativity") {
  MSRSModel m = sd(4, "5/3");
  CHECK(m.c_denominator == 3);
  // x -> u^3, x^c -> u^5
  CHECK(m.l == Z.pow(3));
  CHECK(m.psi == Z.pow(5));
  MSRSModel p = parse_model(R"({"family":"simultaneous_decision","n":4,"c":"5/3"})");
  CHECK(p.c_denominator == 3);
  CHECK(p.psi == m.psi);
}

TEST_CASE("parse_model") {
  MSRSModel a = parse_model(R"({"family":"simultaneous_decision","n":4,"c":"4"})");
  MSRSModel b = sd(4, "4");
  CHECK(a.l == b.l);
  CHECK(a.h == b.h);
  CHECK(a.A == b.A);
  CHECK(a.n == 4);

  MSRSModel c = parse_model(
      R"({"custom":{"n":3,"l":[0,1],"g":["1"],"h":[0,0,"-1/2"],"A":[1,1],"psi":[0,0,1]}})");
  CHECK(c.l == Z);
  CHECK(c.h == Z.pow(2).scaled(Rat(-1, 2)));
  CHECK(c.n == 3);

  auto code_of = [](const std::string& text) {
    try {
      parse_model(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  CHECK(code_of("{") == ErrorCode::parse);
  CHECK(code_of(R"({"family":"nope","n":4,"c":"4"})") == ErrorCode::parse);
  CHECK(code_of(R"({"family":"simultaneous_decision","n":4})") == ErrorCode::parse);
  CHECK(code_of(R"({"family":"simultaneous_decision","n":4,"c":"-1"})") == ErrorCode::bad_parameter);
  CHECK(code_of(R"({"custom":{"n":3,"l":[0],"g":[1],"h":[0],"A":[1,1],"psi":[0,1]}})") == ErrorCode::bad_parameter);
}

TEST_CASE("serialize/parse round trip") {
  std::vector<MSRSModel> ms{
      sd(4, "4"), sd(5, "7/2"),
      builtin_model(Family::mutual_inhibition, {{"n", 3}, {"c", 2}, {"alpha", Rat(1, 3)}}),
      builtin_model(Family::bhlh, {{"n", 2}, {"K2", 3}, {"a_t", Rat(2, 5)}}),
      parse_model(R"({"custom":{"n":3,"l":[0,1],"g":["1"],"h":[0,0,"-1/2"],"A":[1,1],"psi":[0,0,1]}})")};
  for (const auto& m : ms) {
    MSRSModel r = parse_model(serialize_model(m));
    CHECK(r.n == m.n);
    CHECK(r.l == m.l);
    CHECK(r.g == m.g);
    CHECK(r.h == m.h);
    CHECK(r.A == m.A);
    CHECK(r.psi == m.psi);
    CHECK(r.c_denominator == m.c_denominator);
    CHECK(r.family == m.family);
  }
}

TEST_CASE("P is symmetric") {
  std::mt19937_64 rng(3);
  MSRSModel m = builtin_model(Family::bhlh, {{"n", 4}, {"K2", 2}, {"a_t", Rat(1, 3)}});
  for (int t = 0; t < 20; ++t) {
    std::vector<Rat> x(m.n);
    for (auto& v : x) v = random_pos(rng);
    auto P_at = [&](const std::vector<Rat>& y) {
      Rat s = 0;
      std::array<Rat, kNumVars> a{};
      for (const auto& v : y) {
        a[static_cast<int>(Var::z)] = v;
        s += m.psi.eval(a);
      }
      a[static_cast<int>(Var::s)] = s;
      return m.A.eval(a);
    };
    Rat base = P_at(x);
    std::shuffle(x.begin(), x.end(), rng);
    CHECK(P_at(x) == base);
  }
}

TEST_CASE("validate_model") {
  ValidationReport r = validate_model(sd(4, "4"), {Rat(1)});
  CHECK(r.denominator_positivity);
  REQUIRE(r.extreme_point_checks.size() == 1);
  CHECK(r.extreme_point_checks[0].positive_extremes == 1);
  CHECK(r.extremes_ok());

  MSRSModel bh = builtin_model(Family::bhlh, {{"n", 2}, {"K2", 1}, {"a_t", 1}});
  ValidationReport rb = validate_model(bh, {Rat(1)});
  CHECK(rb.denominator_positivity);
  CHECK(rb.extreme_point_checks[0].positive_extremes <= 1);

  for (const auto& m : {sd(3, "3"), sd(7, "9/2"),
                        builtin_model(Family::mutual_inhibition, {{"n", 3}, {"c", 3}, {"alpha", 0}}),
                        builtin_model(Family::bhlh, {{"n", 3}, {"K2", 5}, {"a_t", Rat(1, 2)}})})
    CHECK(validate_model(m, {Rat(1, 2), Rat(3)}).denominator_positivity);
}

TEST_CASE("diagonal template for n=4, c=4") {
  MSRSModel m = sd(4, "4");
  ReducedDiagonal d = diagonal_equilibrium(m);
  MPoly e = MPoly(1) + Q.pow(4).scaled(3);
  CHECK(d.F == RatFunc(-Q) + RatFunc(S, e));
  CHECK(d.G1 == RatFunc(MPoly(-1)) + RatFunc(Q.pow(4).scaled(4), e));
  CHECK(d.G2 == RatFunc(MPoly(-1)) - RatFunc(Q.pow(4).scaled(12), e));

  ClearedFraction cf = clear_denominators(d.F);
  CHECK(cf.num == S - Q - Q.pow(5).scaled(3));
  CHECK(cf.den == e);
  CHECK(cf.den_positive);
  ClearedFraction g1 = clear_denominators(d.G1);
  CHECK(g1.num == Q.pow(4) - MPoly(1));
  CHECK(g1.den == e);
  ClearedFraction poly = clear_denominators(RatFunc(P * Q + S));
  CHECK(poly.num == P * Q + S);
  CHECK(poly.den == MPoly(1));
}

TEST_CASE("non-diagonal templates for n=4, c=4") {
  MSRSModel m = sd(4, "4");
  MPoly e1 = MPoly(1) + Q.pow(4).scaled(3);
  MPoly e2 = MPoly(1) + P.pow(4) + Q.pow(4).scaled(2);
  MPoly e3 = MPoly(1) + P.pow(4).scaled(2) + Q.pow(4);
  ReducedNonDiagonal r1 = nondiagonal_equilibrium(m, 1);
  CHECK(r1.F1 == RatFunc(-P) + RatFunc(S, e1));
  CHECK(r1.F2 == RatFunc(-Q) + RatFunc(S, e2));
  CHECK(r1.G2 == RatFunc(MPoly(-1)) + RatFunc(Q.pow(3) * P.scaled(4), e1));
  CHECK(r1.G3 == RatFunc(MPoly(-2)) - RatFunc(Q.pow(4).scaled(8), e2));
  CHECK(r1.G4 == RatFunc(MPoly(1)) + RatFunc(Q.pow(4).scaled(8), e2) -
                     RatFunc(Q.pow(4) * P.pow(4).scaled(48), e1 * e2));

  ReducedNonDiagonal r2 = nondiagonal_equilibrium(m, 2);
  CHECK(r2.G3 == RatFunc(MPoly(-2)) - RatFunc(P.pow(4).scaled(4), e2) - RatFunc(Q.pow(4).scaled(4), e3));

  MPoly delta = difference_poly(r1.F1, r1.F2);
  MPoly want = S * (P + Q) * (P * P + Q * Q) - e1 * e2;
  CHECK((delta == want || delta == -want));

  CHECK_THROWS_AS(nondiagonal_equilibrium(m, 0), Error);
  CHECK_THROWS_AS(nondiagonal_equilibrium(m, 3), Error);
  CHECK(difference_poly(r1.F1, r1.F1).is_zero());
}

TEST_CASE("difference_poly identity and symmetry") {
  std::vector<MSRSModel> ms{sd(4, "4"), sd(5, "3"), sd(4, "5/2"),
                            builtin_model(Family::mutual_inhibition, {{"n", 4}, {"c", 3}, {"alpha", Rat(1, 2)}}),
                            builtin_model(Family::bhlh, {{"n", 4}, {"K2", 2}, {"a_t", 1}})};
  for (const auto& m : ms) {
    for (int i = 1; i <= m.n / 2; ++i) {
      ReducedNonDiagonal r = nondiagonal_equilibrium(m, i);
      MPoly d = difference_poly(r.F1, r.F2);
      CHECK((P - Q) * d == r.F1.num() * r.F2.den() - r.F2.num() * r.F1.den());
      if (2 * i == m.n) {
        MPoly sw = substitute(d, {{Var::p, Q}, {Var::q, P}});
        CHECK((sw == d || sw == -d));
      }
    }
  }
}

TEST_CASE("templates agree with the full system") {
  std::mt19937_64 rng(17);
  std::vector<MSRSModel> ms{sd(4, "4"), sd(5, "3"), sd(3, "7/3"),
                            builtin_model(Family::mutual_inhibition, {{"n", 4}, {"c", 3}, {"alpha", Rat(1, 2)}}),
                            builtin_model(Family::bhlh, {{"n", 5}, {"K2", 2}, {"a_t", Rat(1, 2)}})};
  for (const auto& m : ms) {
    ReducedDiagonal d = diagonal_equilibrium(m);
    std::vector<ReducedNonDiagonal> nd;
    for (int i = 1; i <= m.n / 2; ++i) nd.push_back(nondiagonal_equilibrium(m, i));
    for (int t = 0; t < 100 / static_cast<int>(ms.size()); ++t) {
      Rat sigma = random_pos(rng), p = random_pos(rng), q = random_pos(rng);
      std::vector<Rat> diag(m.n, q);
      CHECK(d.F.eval(pt(sigma, p, q)) == eval_rhs(m, 0, diag, sigma));
      for (const auto& r : nd) {
        std::vector<Rat> x(m.n, q);
        for (int k = 0; k < r.i; ++k) x[k] = p;
        CHECK(r.F1.eval(pt(sigma, p, q)) == eval_rhs(m, 0, x, sigma));
        CHECK(r.F2.eval(pt(sigma, p, q)) == eval_rhs(m, m.n - 1, x, sigma));
        // at p = q both collapse to the diagonal F
        CHECK(r.F1.eval(pt(sigma, q, q)) == d.F.eval(pt(sigma, p, q)));
        CHECK(r.F2.eval(pt(sigma, q, q)) == d.F.eval(pt(sigma, p, q)));
      }
    }
  }
}

TEST_CASE("stability conditions") {
  auto ks = [](int n, int i) {
    std::vector<int> out;
    for (auto c : stability_conditions(n, i)) out.push_back(c.k * c.sign);
    return out;
  };
  CHECK(ks(4, 0) == std::vector<int>{-1, -2});
  CHECK(ks(2, 1) == std::vector<int>{-3, 4});
  CHECK(ks(4, 1) == std::vector<int>{-1, -3, 4});
  CHECK(ks(4, 2) == std::vector<int>{-1, -2, -3, 4});
}
