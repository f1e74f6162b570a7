#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <msrs/msrs.h>

#include <string>

namespace {

msrs_model* sd(int n, const char* c) {
  msrs_model* m = nullptr;
  REQUIRE(msrs_model_builtin("simultaneous_decision", n, c, nullptr, nullptr, nullptr, &m) == MSRS_OK);
  return m;
}

}  // namespace

TEST_CASE("classify through the C interface") {
  msrs_model* m = sd(4, "4");
  CHECK(msrs_model_n(m) == 4);
  msrs_classify_options o;
  msrs_classify_options_init(&o);
  msrs_result* r = nullptr;
  REQUIRE(msrs_classify(m, &o, &r) == MSRS_OK);
  REQUIRE(msrs_result_boundary_count(r) == 2);
  char *lo = nullptr, *hi = nullptr;
  double approx = 0;
  msrs_flag flag;
  REQUIRE(msrs_result_boundary(r, 0, &lo, &hi, &approx, &flag) == MSRS_OK);
  CHECK(approx == doctest::Approx(1.303331342).epsilon(1e-9));
  CHECK(flag == MSRS_VERIFIED_CHANGE);
  msrs_string_free(lo);
  msrs_string_free(hi);
  REQUIRE(msrs_result_boundary(r, 1, &lo, nullptr, nullptr, nullptr) == MSRS_OK);
  CHECK(std::string(lo) == "4");
  msrs_string_free(lo);
  long want[3][2] = {{1, 1}, {9, 5}, {15, 4}};
  REQUIRE(msrs_result_band_count(r) == 3);
  for (size_t k = 0; k < 3; ++k) {
    long e, s;
    REQUIRE(msrs_result_band(r, k, &e, &s) == MSRS_OK);
    CHECK(e == want[k][0]);
    CHECK(s == want[k][1]);
  }
  CHECK(msrs_result_all_verified(r) == 1);
  CHECK(msrs_result_B_degree(r) > 24);
  double t[4];
  CHECK(msrs_result_timing(r, t) == MSRS_OK);
  char* json = nullptr;
  REQUIRE(msrs_result_render(r, "json", 1, &json) == MSRS_OK);
  CHECK(std::string(json).find("\"bands\"") != std::string::npos);
  msrs_string_free(json);
  CHECK(msrs_result_render(r, "yaml", 0, &json) == MSRS_E_INVALID_ARGUMENT);
  CHECK(msrs_result_band(r, 7, nullptr, nullptr) == MSRS_E_RANGE);
  msrs_result_free(r);
  msrs_model_free(m);
}

TEST_CASE("count and oracle through the C interface") {
  msrs_model* m = sd(4, "4");
  long e = 0, s = 0;
  REQUIRE(msrs_count(m, "2", 1, &e, &s) == MSRS_OK);
  CHECK(e == 9);
  CHECK(s == 5);
  msrs_oracle_options oo;
  msrs_oracle_options_init(&oo);
  oo.starts = 3000;
  long ne = 0, ns = 0;
  int ok = 0;
  char* rep = nullptr;
  REQUIRE(msrs_oracle(m, "2", &oo, &ne, &ns, &ok, &rep) == MSRS_OK);
  CHECK(ne == 9);
  CHECK(ns == 5);
  CHECK(ok == 1);
  CHECK(std::string(rep).find("\"equilibria\"") != std::string::npos);
  msrs_string_free(rep);
  msrs_model_free(m);
}

TEST_CASE("errors are reported with codes and messages") {
  msrs_model* m = nullptr;
  CHECK(msrs_model_builtin("nope", 3, "2", nullptr, nullptr, nullptr, &m) == MSRS_E_PARSE);
  CHECK(std::string(msrs_last_error()).find("nope") != std::string::npos);
  CHECK(msrs_model_builtin("simultaneous_decision", 3, "x/y", nullptr, nullptr, nullptr, &m) == MSRS_E_PARSE);
  CHECK(msrs_model_parse(nullptr, &m) == MSRS_E_NULL);
  CHECK(msrs_model_parse("{not json", &m) == MSRS_E_PARSE);
  m = sd(3, "3");
  long e, s;
  CHECK(msrs_count(m, "-1", 1, &e, &s) == MSRS_E_INVALID_ARGUMENT);
  CHECK(msrs_count(m, "1/0", 1, &e, &s) != MSRS_OK);
  CHECK(std::string(msrs_status_name(MSRS_E_UNDECIDABLE)) == "undecidable");
  msrs_model_free(m);
}

TEST_CASE("model text round trip") {
  msrs_model* m = sd(3, "5/2");
  char* text = nullptr;
  REQUIRE(msrs_model_serialize(m, &text) == MSRS_OK);
  msrs_model* m2 = nullptr;
  REQUIRE(msrs_model_parse(text, &m2) == MSRS_OK);
  char* text2 = nullptr;
  REQUIRE(msrs_model_serialize(m2, &text2) == MSRS_OK);
  CHECK(std::string(text) == std::string(text2));
  long e1, s1, e2, s2;
  REQUIRE(msrs_count(m, "3", 1, &e1, &s1) == MSRS_OK);
  REQUIRE(msrs_count(m2, "3", 1, &e2, &s2) == MSRS_OK);
  CHECK(e1 == e2);
  CHECK(s1 == s2);
  msrs_string_free(text);
  msrs_string_free(text2);
  msrs_model_free(m);
  msrs_model_free(m2);
}
