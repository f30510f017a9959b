#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qdaudit.h>

#include <cstring>
#include <string>

namespace {
struct InstanceHandle {
  qda_instance* p = nullptr;
  ~InstanceHandle() { qda_instance_free(p); }
};
struct ReportHandle {
  qda_report* p = nullptr;
  ~ReportHandle() { qda_report_free(p); }
};
std::string take(char* s) {
  std::string out = s ? s : "";
  qda_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("version string") {
  const char* v = qda_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("builtin instances round trip through the C surface") {
  InstanceHandle h;
  char err[256] = {0};
  REQUIRE(qda_instance_builtin(3, &h.p, err, sizeof err) == QDA_OK);
  CHECK(qda_instance_n(h.p) == 2);
  CHECK(qda_instance_m(h.p) == 1);
  std::string js = take(qda_instance_emit_json(h.p));
  CHECK(js.find("\"n\":2") != std::string::npos);

  InstanceHandle back;
  REQUIRE(qda_instance_parse_json(js.c_str(), &back.p, err, sizeof err) == QDA_OK);
  CHECK(qda_instance_n(back.p) == 2);
  // emit is stable across a round trip
  CHECK(take(qda_instance_emit_json(back.p)) == js);
}

TEST_CASE("parse failures set the error buffer") {
  InstanceHandle h;
  char err[256] = {0};
  CHECK(qda_instance_parse_json("{nope", &h.p, err, sizeof err) == QDA_ERR_PARSE);
  CHECK(h.p == nullptr);
  CHECK(std::strlen(err) > 0);
  CHECK(qda_instance_builtin(9, &h.p, err, sizeof err) == QDA_ERR_INPUT);
}

TEST_CASE("null arguments are rejected") {
  char err[64] = {0};
  CHECK(qda_instance_parse_json(nullptr, nullptr, err, sizeof err) ==
        QDA_ERR_NULL_ARGUMENT);
  InstanceHandle h;
  CHECK(qda_instance_parse_json(nullptr, &h.p, err, sizeof err) == QDA_ERR_NULL_ARGUMENT);
  CHECK(qda_audit_run(nullptr, 0, nullptr, err, sizeof err) == QDA_ERR_NULL_ARGUMENT);
  CHECK(qda_instance_n(nullptr) == 0);
}

TEST_CASE("validation text for a defective instance") {
  InstanceHandle h;
  char err[256] = {0};
  const char* text = R"({"n":1,"m":1,"A":[[1]],"f":[0],
    "constraints":[{"Q":[[1]],"b":[0],"c":1}]})";
  REQUIRE(qda_instance_parse_json(text, &h.p, err, sizeof err) == QDA_OK);
  std::string v = take(qda_instance_validate(h.p));
  CHECK(v.find("f is zero") != std::string::npos);

  InstanceHandle clean;
  REQUIRE(qda_instance_builtin(2, &clean.p, err, sizeof err) == QDA_OK);
  CHECK(take(qda_instance_validate(clean.p)).empty());
}

TEST_CASE("audit through the C surface") {
  InstanceHandle h;
  char err[256] = {0};
  REQUIRE(qda_instance_builtin(2, &h.p, err, sizeof err) == QDA_OK);
  ReportHandle rep;
  REQUIRE(qda_audit_run(h.p, 7, &rep.p, err, sizeof err) == QDA_OK);
  CHECK(qda_report_exit_code(rep.p) == 3);
  std::string summary = take(qda_report_summary(rep.p));
  CHECK(summary.find("theorem1: FALSIFIED") != std::string::npos);
  CHECK(summary.find("gap: 2.25") != std::string::npos);
  std::string js = take(qda_report_json(rep.p));
  CHECK(js.find("\"report_version\"") != std::string::npos);

  // same seed, same bytes
  ReportHandle rep2;
  REQUIRE(qda_audit_run(h.p, 7, &rep2.p, err, sizeof err) == QDA_OK);
  CHECK(take(qda_report_json(rep2.p)) == js);
}

TEST_CASE("dual curve through the C surface") {
  InstanceHandle h;
  char err[256] = {0};
  REQUIRE(qda_instance_builtin(3, &h.p, err, sizeof err) == QDA_OK);
  char* csv = nullptr;
  REQUIRE(qda_dual_curve_csv(h.p, 0.0, 0.5, 11, &csv, err, sizeof err) == QDA_OK);
  std::string text = take(csv);
  CHECK(text.rfind("sigma,phi,psi\n", 0) == 0);
  // bad ranges surface as input errors
  char* nothing = nullptr;
  CHECK(qda_dual_curve_csv(h.p, 1.0, 0.0, 11, &nothing, err, sizeof err) ==
        QDA_ERR_INPUT);
  CHECK(nothing == nullptr);
}

TEST_CASE("oracle through the C surface") {
  InstanceHandle h;
  char err[256] = {0};
  REQUIRE(qda_instance_builtin(1, &h.p, err, sizeof err) == QDA_OK);
  char* js = nullptr;
  REQUIRE(qda_oracle_run(h.p, 128, &js, err, sizeof err) == QDA_OK);
  std::string text = take(js);
  CHECK(text.find("\"count\":2") != std::string::npos);

  // error mapping: n too large for the oracle
  std::string big = R"({"n":5,"m":1,"A":[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],
    [0,0,0,1,0],[0,0,0,0,1]],"f":[1,1,1,1,1],"constraints":[{"Q":[[1,0,0,0,0],
    [0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]],"b":[0,0,0,0,0],"c":1}]})";
  InstanceHandle h5;
  REQUIRE(qda_instance_parse_json(big.c_str(), &h5.p, err, sizeof err) == QDA_OK);
  char* none = nullptr;
  CHECK(qda_oracle_run(h5.p, 128, &none, err, sizeof err) ==
        QDA_ERR_DIMENSION_TOO_LARGE);
}
