#ifndef HARMONIC_ERRORS_HPP
#define HARMONIC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace harmonic {

/// Base of every error raised by the library. `code()` is the numeric
/// diagnostic code printed by the CLI as `E<code>:`.
class Error : public std::runtime_error {
 public:
  Error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error(101, "syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownFunction : public Error {
 public:
  UnknownFunction(std::size_t offset, const std::string& name)
      : Error(102, "unknown function '" + name + "' at offset " + std::to_string(offset)), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NonIntegerExponent : public Error {
 public:
  explicit NonIntegerExponent(std::size_t offset)
      : Error(103, "exponent at offset " + std::to_string(offset) + " does not evaluate to an integer") {}
};

/// Evaluation hit a pole or a branch point. `path()` is the slash separated
/// child-index path of the offending node ("" for the root).
class DomainError : public Error {
 public:
  DomainError(const std::string& path, const std::string& detail)
      : Error(104, "domain error at node '/" + path + "': " + detail), path_(path), detail_(detail) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string path_;
  std::string detail_;
};

class NonHolomorphic : public Error {
 public:
  explicit NonHolomorphic(const std::string& path, const std::string& detail = "")
      : Error(105, "non-holomorphic node at '/" + path + "'" + (detail.empty() ? "" : ": " + detail)),
        path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class HigherOrderTerm : public Error {
 public:
  HigherOrderTerm(std::size_t offset, const std::string& token)
      : Error(201, "unsupported operator term '" + token + "' at offset " + std::to_string(offset)) {}
};

class NotPrincipal : public Error {
 public:
  NotPrincipal() : Error(202, "operator has lower-order terms; only the principal part can be factored") {}
};

class DegenerateLeading : public Error {
 public:
  DegenerateLeading() : Error(203, "coefficient of dxx is zero") {}
};

class DegenerateRoots : public Error {
 public:
  DegenerateRoots() : Error(204, "characteristic roots coincide; the two-family general solution does not apply") {}
};

class IncompatibleSystem : public Error {
 public:
  explicit IncompatibleSystem(const std::string& detail) : Error(301, "incompatible split system: " + detail) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error(401, detail) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& detail) : Error(402, detail) {}
};

}  // namespace harmonic

#endif  // HARMONIC_ERRORS_HPP
