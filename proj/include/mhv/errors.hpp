#ifndef MHV_ERRORS_HPP
#define MHV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed element text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& detail);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// A basis vector outside the window a map or solver was built on.
class WindowViolation : public Error {
 public:
  using Error::Error;
};

/// Outer window too small for the requested degree and interior.
class BufferViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The solver's own cross-checks failed; indicates a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A subspace expected to lie inside another does not.
class ContainmentError : public Error {
 public:
  ContainmentError(std::size_t witness_index, const std::string& detail)
      : Error(detail), witness_index_(witness_index) {}

  /// Position of the first offending vector in the input list.
  std::size_t witness_index() const noexcept { return witness_index_; }

 private:
  std::size_t witness_index_;
};

/// No derivation reproduces the oracle's values at the fitting points.
class NotTwoLocal : public Error {
 public:
  using Error::Error;
};

}  // namespace mhv

#endif  // MHV_ERRORS_HPP
