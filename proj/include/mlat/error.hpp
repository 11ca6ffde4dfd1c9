// Error types shared by every mlat module.

#ifndef MLAT_ERROR_HPP_
#define MLAT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlat {

// One kind per error family; the CLI maps each to its own exit code.
enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NotUnimodular,
  CapExceeded,
  SizeLimit,
  NotASolution,
  NotInvariant,
  Homomorphism,
  PreconditionFailed,
  Parse,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
private:
  ErrorKind kind_;
};

// A residual entry of the master equation that is not an integer.
// Indices are 0-based; messages print them 1-based.
class NotInvariantError : public Error {
public:
  NotInvariantError(std::size_t generator, std::size_t row, std::size_t col,
                    const std::string& value)
    : Error(ErrorKind::NotInvariant,
            "residual of generator " + std::to_string(generator + 1) +
            " has non-integer entry " + value + " at (" +
            std::to_string(row + 1) + "," + std::to_string(col + 1) + ")"),
      generator(generator), row(row), col(col) {}
  std::size_t generator, row, col;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace mlat

#endif
