#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmon {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is not the kind of object it claims to be (not a partial order,
/// missing bounds, a pair without a join, a reflexive orthogonality pair...).
/// Distinct from an axiom violation, which is reported, not thrown.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, std::vector<std::size_t> witness = {})
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

/// Refusal to work on inputs above the desk-scale bound.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold. `code()` names the condition
/// (FixpointRequired, NotBoolean, NotAnIdeal, NotSubalgebra, DimensionMismatch,
/// NotProjection, NotPSD, ...).
class PreconditionError : public Error {
 public:
  PreconditionError(std::string code, const std::string& what,
                    std::vector<std::size_t> witness = {})
      : Error(code + ": " + what), code_(std::move(code)), witness_(std::move(witness)) {}
  const std::string& code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  std::vector<std::size_t> witness_;
};

/// Malformed external input (JSON, Greechie text, scalar syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultMaxElements = 512;
inline constexpr std::size_t kMaxAmbientDim = 256;

}  // namespace qmon
