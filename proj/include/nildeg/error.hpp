#pragma once

#include <stdexcept>
#include <string>

namespace nildeg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

/// A computation needs a root that the working field does not contain.
/// `radicand` is the rendered element whose square root is missing.
class NeedsExtension : public Error {
 public:
  NeedsExtension(const std::string& what, std::string radicand)
      : Error("needs field extension: " + what), radicand_(std::move(radicand)) {}
  const std::string& radicand() const { return radicand_; }

 private:
  std::string radicand_;
};

class PoleAtZero : public Error {
 public:
  explicit PoleAtZero(const std::string& what) : Error("pole at zero: " + what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

class NotNilpotent : public Error {
 public:
  explicit NotNilpotent(const std::string& what) : Error("not nilpotent: " + what) {}
};

class NotSupported : public Error {
 public:
  explicit NotSupported(const std::string& what) : Error("not supported: " + what) {}
};

}  // namespace nildeg
