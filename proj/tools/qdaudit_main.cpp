// Command-line front end for the qdaudit shared library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdaudit.h"

namespace {

constexpr int kExitOk = 0;          // all audited claims hold
constexpr int kExitIoError = 1;     // I/O, parse, or usage problem
constexpr int kExitHypothesis = 2;  // hypothesis failure / inconclusive only
constexpr int kExitFalsified = 3;   // at least one claim falsified

struct InstanceDeleter {
  void operator()(qda_instance* p) const { qda_instance_free(p); }
};
struct ReportDeleter {
  void operator()(qda_report* p) const { qda_report_free(p); }
};
using InstancePtr = std::unique_ptr<qda_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<qda_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  qda_string_free(s);
  return out;
}

bool read_file(const std::string& path, std::string* out, std::string* err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *err = "cannot open " + path;
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content, std::string* err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *err = "cannot write " + path;
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    *err = "short write to " + path;
    return false;
  }
  return true;
}

InstancePtr load_instance(const std::string& path, int* exit_code) {
  std::string text, err;
  if (!read_file(path, &text, &err)) {
    std::cerr << "error: " << err << "\n";
    *exit_code = kExitIoError;
    return nullptr;
  }
  char errbuf[512] = {0};
  qda_instance* raw = nullptr;
  qda_status st = qda_instance_parse_json(text.c_str(), &raw, errbuf, sizeof errbuf);
  if (st != QDA_OK) {
    std::cerr << "error: " << (errbuf[0] ? errbuf : "failed to parse instance") << "\n";
    *exit_code = kExitIoError;
    return nullptr;
  }
  *exit_code = kExitOk;
  return InstancePtr(raw);
}

int run_audit(const qda_instance* inst, std::uint64_t seed, const std::string& json_path) {
  char errbuf[512] = {0};
  qda_report* raw = nullptr;
  qda_status st = qda_audit_run(inst, seed, &raw, errbuf, sizeof errbuf);
  if (st != QDA_OK) {
    std::cerr << "error: " << (errbuf[0] ? errbuf : "audit failed") << "\n";
    return kExitIoError;
  }
  ReportPtr report(raw);
  std::cout << take_string(qda_report_summary(report.get()));
  if (!json_path.empty()) {
    std::string err;
    if (!write_file(json_path, take_string(qda_report_json(report.get())), &err)) {
      std::cerr << "error: " << err << "\n";
      return kExitIoError;
    }
  }
  return qda_report_exit_code(report.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical-dual construction and audit for quadratically constrained "
               "quadratic minimization"};
  app.require_subcommand(1);

  std::string file;
  std::string json_path;
  std::string out_path;
  std::string emit_path;
  std::uint64_t seed = 0;
  double lo = 0.0, hi = 1.0;
  int samples = 1001;
  int grid = 256;
  int which = 1;

  CLI::App* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", file, "instance JSON")->required();

  CLI::App* audit = app.add_subcommand("audit", "run the full audit on an instance");
  audit->add_option("file", file, "instance JSON")->required();
  audit->add_option("--seed", seed, "seed for randomized starts");
  audit->add_option("--json", json_path, "write the full report to this path");

  CLI::App* curve = app.add_subcommand(
      "dual-curve", "sample the dual value and its derivative to CSV (m = 1)");
  curve->add_option("file", file, "instance JSON")->required();
  curve->add_option("--lo", lo, "left end of the sigma range")->required();
  curve->add_option("--hi", hi, "right end of the sigma range")->required();
  curve->add_option("--samples", samples, "number of samples (inclusive grid)");
  curve->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force global minimization");
  oracle->add_option("file", file, "instance JSON")->required();
  oracle->add_option("--grid", grid, "grid points per axis (>= 64)");

  CLI::App* example = app.add_subcommand("example", "audit a built-in instance (1-3)");
  example->add_option("which", which, "example index")->required();
  example->add_option("--seed", seed, "seed for randomized starts");
  example->add_option("--json", json_path, "write the full report to this path");
  example->add_option("--emit", emit_path, "also write the instance JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage/message
    return e.get_exit_code() == 0 ? kExitOk : kExitIoError;
  }

  if (validate->parsed()) {
    int code;
    InstancePtr inst = load_instance(file, &code);
    if (!inst) return code;
    std::string report = take_string(qda_instance_validate(inst.get()));
    if (report.empty()) {
      std::cout << "ok: instance is structurally valid (n=" << qda_instance_n(inst.get())
                << ", m=" << qda_instance_m(inst.get()) << ")\n";
      return kExitOk;
    }
    std::cout << report;
    return kExitIoError;
  }

  if (audit->parsed()) {
    int code;
    InstancePtr inst = load_instance(file, &code);
    if (!inst) return code;
    return run_audit(inst.get(), seed, json_path);
  }

  if (curve->parsed()) {
    int code;
    InstancePtr inst = load_instance(file, &code);
    if (!inst) return code;
    char errbuf[512] = {0};
    char* csv = nullptr;
    qda_status st =
        qda_dual_curve_csv(inst.get(), lo, hi, samples, &csv, errbuf, sizeof errbuf);
    if (st != QDA_OK) {
      std::cerr << "error: " << (errbuf[0] ? errbuf : "dual-curve failed") << "\n";
      return kExitIoError;
    }
    std::string err;
    if (!write_file(out_path, take_string(csv), &err)) {
      std::cerr << "error: " << err << "\n";
      return kExitIoError;
    }
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
  }

  if (oracle->parsed()) {
    int code;
    InstancePtr inst = load_instance(file, &code);
    if (!inst) return code;
    char errbuf[512] = {0};
    char* json = nullptr;
    qda_status st = qda_oracle_run(inst.get(), grid, &json, errbuf, sizeof errbuf);
    if (st != QDA_OK) {
      std::cerr << "error: " << (errbuf[0] ? errbuf : "oracle failed") << "\n";
      return kExitIoError;
    }
    std::cout << take_string(json) << "\n";
    return kExitOk;
  }

  if (example->parsed()) {
    char errbuf[512] = {0};
    qda_instance* raw = nullptr;
    qda_status st = qda_instance_builtin(which, &raw, errbuf, sizeof errbuf);
    if (st != QDA_OK) {
      std::cerr << "error: " << (errbuf[0] ? errbuf : "unknown example") << "\n";
      return kExitIoError;
    }
    InstancePtr inst(raw);
    if (!emit_path.empty()) {
      std::string err;
      if (!write_file(emit_path, take_string(qda_instance_emit_json(inst.get())), &err)) {
        std::cerr << "error: " << err << "\n";
        return kExitIoError;
      }
    }
    return run_audit(inst.get(), seed, json_path);
  }

  return kExitIoError;
}
