#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqed {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// Atomic units. Every formula keeps hbar symbolic through this constant.
inline constexpr double kHbar = 1.0;
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  InvalidBasis,
  DimensionMismatch,
  NonHermitian,
  InvalidArgument,
  Singularity,
  Unsupported,
  Config,
  Numeric,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

std::string to_string(ErrorKind kind);

enum class Exec { Serial, Parallel };

}  // namespace cqed
