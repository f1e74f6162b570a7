#include <doctest.h>

#include <random>

#include "msrs/interval.hpp"

using namespace msrs;

TEST_CASE("interval arithmetic encloses pointwise results") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int t = 0; t < 300; ++t) {
    Rat a0(d(rng), 3), a1(d(rng), 5), b0(d(rng), 7), b1(d(rng), 2);
    a0.canonicalize();
    a1.canonicalize();
    b0.canonicalize();
    b1.canonicalize();
    RInterval A(std::min(a0, a1), std::max(a0, a1)), B(std::min(b0, b1), std::max(b0, b1));
    for (const Rat& x : {A.lo, A.hi, A.mid()})
      for (const Rat& y : {B.lo, B.hi, B.mid()}) {
        CHECK((A + B).contains(x + y));
        CHECK((A - B).contains(x - y));
        CHECK((A * B).contains(x * y));
        if (!B.contains_zero()) CHECK((A / B).contains(x / y));
      }
  }
}

TEST_CASE("interval division by an interval holding zero throws") {
  RInterval A(1, 2), B(-1, 1);
  CHECK_THROWS_AS(A / B, Error);
}

TEST_CASE("interval predicates") {
  RInterval A(Rat(1), Rat(3));
  CHECK(A.sign() == 1);
  CHECK((-A).sign() == -1);
  CHECK(RInterval(Rat(-1), Rat(1)).sign() == 0);
  CHECK(A.mid() == 2);
  CHECK(A.width() == 2);
  CHECK(RInterval(Rat(2)).inside_interior(A));
  CHECK_FALSE(RInterval(Rat(1)).inside_interior(A));
  CHECK(A.disjoint(RInterval(Rat(4), Rat(5))));
  CHECK_FALSE(A.disjoint(RInterval(Rat(3), Rat(5))));
}

TEST_CASE("eval_positive encloses sampled values") {
  const MPoly P = MPoly::variable(Var::p), Q = MPoly::variable(Var::q);
  MPoly f = P * P * Q - MPoly(3) * P * Q * Q + MPoly(Rat(1, 2)) - Q.pow(3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 40);
  for (int t = 0; t < 200; ++t) {
    Rat p0(d(rng), 10), p1(d(rng), 10), q0(d(rng), 10), q1(d(rng), 10);
    p0.canonicalize();
    p1.canonicalize();
    q0.canonicalize();
    q1.canonicalize();
    RBox box;
    box[static_cast<int>(Var::p)] = RInterval(std::min(p0, p1), std::max(p0, p1));
    box[static_cast<int>(Var::q)] = RInterval(std::min(q0, q1), std::max(q0, q1));
    RInterval E = eval_positive(f, box);
    for (int k = 0; k <= 4; ++k) {
      std::array<Rat, kNumVars> pt;
      const auto& bp = box[static_cast<int>(Var::p)];
      const auto& bq = box[static_cast<int>(Var::q)];
      pt[static_cast<int>(Var::p)] = bp.lo + bp.width() * k / 4;
      pt[static_cast<int>(Var::q)] = bq.lo + bq.width() * (4 - k) / 4;
      CHECK(E.contains(f.eval(pt)));
    }
  }
}

TEST_CASE("eval_positive on a univariate integer polynomial") {
  ZPoly f(std::vector<Int>{Int(-2), Int(0), Int(1)});  // x^2 - 2
  RInterval E = eval_positive(f, RInterval(Rat(1), Rat(2)));
  CHECK(E.contains(Rat(-1)));
  CHECK(E.contains(Rat(2)));
  CHECK(eval_positive(f, RInterval(Rat(3))).lo == 7);
  CHECK(eval_positive(f, RInterval(Rat(3))).hi == 7);
}
