#include "cqed/common.hpp"

namespace cqed {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(to_string(kind) + ": " + what), kind_(kind) {}

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBasis: return "invalid basis";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NonHermitian: return "non-Hermitian input";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Numeric: return "numeric failure";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

}  // namespace cqed
