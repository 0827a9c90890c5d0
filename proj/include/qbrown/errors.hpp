#pragma once

#include <stdexcept>
#include <string>

namespace qbrown {

enum class ErrorCode {
    NoBracket,
    NoConvergence,
    Overflow,
    OutOfDomain,
    NotPeriodic,
    UnstableStep,
    KernelNotPositive,
    ZeroFriction,
    CFLViolation,
    NegativeDensity,
    FlatPotential,
    BelowOnset,
    NotOverdamped,
    Collapse,
    Unbounded,
    ConfigError,
};

const char* to_string(ErrorCode code);

/// All numerical and validation failures surface as this exception type;
/// the CLI maps ConfigError to exit 1 and everything else to exit 2.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace qbrown
