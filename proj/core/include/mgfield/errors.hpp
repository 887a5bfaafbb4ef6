#pragma once

#include <stdexcept>
#include <string>

namespace mgfield {

/// Failure category. Input errors are caller mistakes (bad files, bad
/// arguments, bad indices); numeric errors are conditions detected during
/// computation (failed factorizations, singular systems).
enum class ErrorKind { input, numeric };

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// An edge was given a zero or negative length.
struct NonPositiveLength final : Error {
  explicit NonPositiveLength(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// The graph (or a refinement of it) is not connected.
struct Disconnected final : Error {
  explicit Disconnected(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// A vertex, edge, or node index is out of range.
struct BadIndex final : Error {
  explicit BadIndex(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// A parameter value is outside its admissible range, or two inputs are
/// inconsistent with each other.
struct BadParams final : Error {
  explicit BadParams(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// A point's offset falls outside the closed interval of its edge.
struct BadPoint final : Error {
  explicit BadPoint(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// An operation requiring a common edge length was given a graph whose
/// edge lengths differ.
struct NonUniformLengths final : Error {
  explicit NonUniformLengths(const std::string& msg) : Error(ErrorKind::input, msg) {}
};

/// A Cholesky factorization hit a non-positive pivot. `index` is the
/// zero-based row at which the factorization failed.
struct NotPositiveDefinite final : Error {
  NotPositiveDefinite(int idx, const std::string& msg)
      : Error(ErrorKind::numeric, msg), index(idx) {}

  int index;
};

/// The graph Laplacian could not be inverted on the complement of the
/// constant vector, i.e. the underlying graph is effectively disconnected.
struct SingularLaplacian final : Error {
  explicit SingularLaplacian(const std::string& msg) : Error(ErrorKind::numeric, msg) {}
};

}  // namespace mgfield
