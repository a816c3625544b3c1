#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace npr {

/**
 * Error taxonomy mirroring the CLI exit contract: anything thrown here is an
 * input or precondition problem (exit code 2), never a negative verdict.
 * Negative verdicts (a set failing a check, an infeasible interpolation) are
 * ordinary return values carrying certificates.
 */
class Error : public std::runtime_error {
public:
  enum class Kind {
    Parse,         // malformed group string, element array, or job file
    Input,         // dimension/spec mismatch, invalid argument
    Precondition,  // operation-specific precondition violated
    Bound,         // enumeration budget exceeded
    Divisibility,  // requested root does not exist at the given level
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& message) {
  throw Error(kind, message);
}

const char* to_string(Error::Kind kind) noexcept;

}  // namespace npr
