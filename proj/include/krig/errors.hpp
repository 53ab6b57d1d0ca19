#ifndef KRIG_ERRORS_HPP
#define KRIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace krig {

/// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConstantChannelError : Error {
  explicit ConstantChannelError(const std::string& msg) : Error(msg) {}
};

struct LogTooShortError : Error {
  explicit LogTooShortError(const std::string& msg) : Error(msg) {}
};

struct NyquistViolationError : Error {
  explicit NyquistViolationError(const std::string& msg) : Error(msg) {}
};

struct NumericalBlowupError : Error {
  explicit NumericalBlowupError(const std::string& msg) : Error(msg) {}
};

struct EmptyClusterError : Error {
  explicit EmptyClusterError(const std::string& msg) : Error(msg) {}
};

struct RankDeficientError : Error {
  explicit RankDeficientError(const std::string& msg) : Error(msg) {}
};

struct SingularDesignError : Error {
  explicit SingularDesignError(const std::string& msg) : Error(msg) {}
};

struct SingularKktError : Error {
  explicit SingularKktError(const std::string& msg) : Error(msg) {}
};

struct EigenFailureError : Error {
  explicit EigenFailureError(const std::string& msg) : Error(msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct NoValidPatternError : Error {
  explicit NoValidPatternError(const std::string& msg) : Error(msg) {}
};

struct ZeroTruthError : Error {
  explicit ZeroTruthError(const std::string& msg) : Error(msg) {}
};

struct SolverDidNotConvergeError : Error {
  explicit SolverDidNotConvergeError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace krig

#endif  // KRIG_ERRORS_HPP
