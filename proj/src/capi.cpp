#include "qdaudit.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "audit.hpp"

struct qda_instance {
  qda::ProblemInstance inst;
  std::string comment;  // carried so emit round-trips built-in annotations
};

struct qda_report {
  qda::AuditReport rep;
};

namespace {

void fill_err(char* err, size_t err_len, const char* msg) {
  if (!err || err_len == 0) return;
  std::snprintf(err, err_len, "%s", msg);
}

qda_status status_from(const qda::Error& e) {
  switch (e.code()) {
    case qda::ErrorCode::Parse:
      return QDA_ERR_PARSE;
    case qda::ErrorCode::Input:
      return QDA_ERR_INPUT;
    case qda::ErrorCode::MNotOne:
      return QDA_ERR_M_NOT_ONE;
    case qda::ErrorCode::SingularG:
      return QDA_ERR_SINGULAR_G;
    case qda::ErrorCode::EmptyY:
      return QDA_ERR_EMPTY_Y;
    case qda::ErrorCode::EmptySPlus:
      return QDA_ERR_EMPTY_S_PLUS;
    case qda::ErrorCode::NoCompactConstraint:
      return QDA_ERR_NO_COMPACT_CONSTRAINT;
    case qda::ErrorCode::DimensionTooLarge:
      return QDA_ERR_DIMENSION_TOO_LARGE;
    case qda::ErrorCode::InfeasibleEverywhere:
      return QDA_ERR_INFEASIBLE_EVERYWHERE;
  }
  return QDA_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
qda_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    return fn();
  } catch (const qda::Error& e) {
    fill_err(err, err_len, e.what());
    return status_from(e);
  } catch (const std::bad_alloc&) {
    fill_err(err, err_len, "out of memory");
    return QDA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return QDA_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* qda_version(void) { return "0.1.0"; }

void qda_string_free(char* s) { std::free(s); }

qda_status qda_instance_parse_json(const char* json_text, qda_instance** out, char* err,
                                   size_t err_len) {
  if (!json_text || !out) {
    fill_err(err, err_len, "null argument");
    return QDA_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  return guarded(err, err_len, [&]() -> qda_status {
    std::string comment;
    auto inst = qda::instance_from_json(json_text, &comment);
    *out = new qda_instance{std::move(inst), std::move(comment)};
    return QDA_OK;
  });
}

qda_status qda_instance_builtin(int which, qda_instance** out, char* err,
                                size_t err_len) {
  if (!out) {
    fill_err(err, err_len, "null argument");
    return QDA_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  return guarded(err, err_len, [&]() -> qda_status {
    auto inst = qda::builtin_example(which);
    *out = new qda_instance{std::move(inst), qda::builtin_example_comment(which)};
    return QDA_OK;
  });
}

void qda_instance_free(qda_instance* inst) { delete inst; }

int qda_instance_n(const qda_instance* inst) { return inst ? inst->inst.n() : 0; }
int qda_instance_m(const qda_instance* inst) { return inst ? inst->inst.m() : 0; }

char* qda_instance_emit_json(const qda_instance* inst) {
  if (!inst) return nullptr;
  try {
    return dup_string(qda::instance_to_json(inst->inst, inst->comment));
  } catch (...) {
    return nullptr;
  }
}

char* qda_instance_validate(const qda_instance* inst) {
  if (!inst) return nullptr;
  try {
    std::string out;
    for (const qda::Violation& v : qda::validate(inst->inst)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", v.measured);
      out += v.field + ": " + v.message + " (measured " + buf + ")\n";
    }
    return dup_string(out);
  } catch (...) {
    return nullptr;
  }
}

qda_status qda_audit_run(const qda_instance* inst, uint64_t seed, qda_report** out,
                         char* err, size_t err_len) {
  if (!inst || !out) {
    fill_err(err, err_len, "null argument");
    return QDA_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  return guarded(err, err_len, [&]() -> qda_status {
    qda::AuditOptions opts;
    opts.seed = seed;
    auto rep = qda::full_audit(inst->inst, opts);
    *out = new qda_report{std::move(rep)};
    return QDA_OK;
  });
}

void qda_report_free(qda_report* rep) { delete rep; }

char* qda_report_json(const qda_report* rep) {
  if (!rep) return nullptr;
  try {
    return dup_string(qda::report_to_json(rep->rep));
  } catch (...) {
    return nullptr;
  }
}

char* qda_report_summary(const qda_report* rep) {
  if (!rep) return nullptr;
  try {
    return dup_string(qda::report_summary(rep->rep));
  } catch (...) {
    return nullptr;
  }
}

int qda_report_exit_code(const qda_report* rep) {
  if (!rep) return 2;
  return qda::report_exit_code(rep->rep);
}

qda_status qda_dual_curve_csv(const qda_instance* inst, double lo, double hi,
                              int samples, char** out_csv, char* err, size_t err_len) {
  if (!inst || !out_csv) {
    fill_err(err, err_len, "null argument");
    return QDA_ERR_NULL_ARGUMENT;
  }
  *out_csv = nullptr;
  return guarded(err, err_len, [&]() -> qda_status {
    std::string csv = qda::curve_csv(inst->inst, lo, hi, samples);
    *out_csv = dup_string(csv);
    return *out_csv ? QDA_OK : QDA_ERR_INTERNAL;
  });
}

qda_status qda_oracle_run(const qda_instance* inst, int grid_points_per_axis,
                          char** out_json, char* err, size_t err_len) {
  if (!inst || !out_json) {
    fill_err(err, err_len, "null argument");
    return QDA_ERR_NULL_ARGUMENT;
  }
  *out_json = nullptr;
  return guarded(err, err_len, [&]() -> qda_status {
    qda::OracleOptions opts;
    opts.grid_points_per_axis = grid_points_per_axis;
    auto result = qda::global_min_brute(inst->inst, opts);
    *out_json = dup_string(qda::oracle_result_to_json(result));
    return *out_json ? QDA_OK : QDA_ERR_INTERNAL;
  });
}

}  // extern "C"
