#pragma once

#include <stdexcept>
#include <string>

namespace loday {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different generator contexts.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands belong to different generator contexts") {}
  explicit ContextMismatch(const std::string& what) : Error(what) {}
};

class IncompleteDerivation : public Error {
 public:
  using Error::Error;
};

// A grading-sensitive operation received an inhomogeneous argument.
class GradingError : public Error {
 public:
  using Error::Error;
};

// A differential failed its square-zero test. The residual is kept in text form.
class NotSquareZero : public Error {
 public:
  NotSquareZero(const std::string& what, std::string residual)
      : Error(what + ": " + residual), residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

// Structure tables rejected by a Jacobi-type test ({mu,mu} != 0, {H,H} != 0,
// [P,P] != 0, d psi != 0). residual() holds the obstruction.
class StructureRejected : public Error {
 public:
  StructureRejected(const std::string& what, std::string residual)
      : Error(what + ": " + residual), residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class NotLieAlgebra : public StructureRejected {
 public:
  using StructureRejected::StructureRejected;
};

class NotAlgebroid : public StructureRejected {
 public:
  using StructureRejected::StructureRejected;
};

class NotPoisson : public StructureRejected {
 public:
  using StructureRejected::StructureRejected;
};

class NotClosed : public StructureRejected {
 public:
  using StructureRejected::StructureRejected;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace loday
