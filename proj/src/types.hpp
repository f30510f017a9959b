#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qda {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Stable numeric codes; the C API exposes these one-to-one.
enum class ErrorCode {
  Parse = 1,
  Input = 2,
  MNotOne = 3,
  SingularG = 4,
  EmptyY = 5,
  EmptySPlus = 6,
  NoCompactConstraint = 7,
  DimensionTooLarge = 8,
  InfeasibleEverywhere = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};
struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorCode::Input, w) {}
};
struct MNotOneError : Error {
  explicit MNotOneError(const std::string& w) : Error(ErrorCode::MNotOne, w) {}
};
struct SingularGError : Error {
  explicit SingularGError(const std::string& w) : Error(ErrorCode::SingularG, w) {}
};
struct EmptyYError : Error {
  explicit EmptyYError(const std::string& w) : Error(ErrorCode::EmptyY, w) {}
};
struct EmptySPlusError : Error {
  explicit EmptySPlusError(const std::string& w) : Error(ErrorCode::EmptySPlus, w) {}
};
struct NoCompactConstraintError : Error {
  explicit NoCompactConstraintError(const std::string& w) : Error(ErrorCode::NoCompactConstraint, w) {}
};
struct DimensionTooLargeError : Error {
  explicit DimensionTooLargeError(const std::string& w) : Error(ErrorCode::DimensionTooLarge, w) {}
};
struct InfeasibleEverywhereError : Error {
  explicit InfeasibleEverywhereError(const std::string& w) : Error(ErrorCode::InfeasibleEverywhere, w) {}
};

// splitmix64; keeps randomized paths reproducible without depending on
// library-specific std::uniform_real_distribution behavior.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next_u64() {
    s_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t s_;
};

}  // namespace qda
