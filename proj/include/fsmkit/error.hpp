#pragma once

#include <stdexcept>
#include <string>

namespace fsmkit {

/// Location of a token or construct in a source text. Lines and columns are
/// 1-based; `column_end` is inclusive.
struct SourceSpan {
  std::string file;
  int line = 0;
  int column_start = 0;
  int column_end = 0;

  bool empty() const { return line == 0; }
  std::string to_string() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Ill-sorted term or formula, unknown symbol, bad declaration.
class SortError : public Error {
 public:
  SortError(const std::string& message, std::string symbol, SourceSpan span = {});
  const std::string& symbol() const { return symbol_; }
  const SourceSpan& span() const { return span_; }

 private:
  std::string symbol_;
  SourceSpan span_;
};

/// Input lies outside the syntactic fragment an operation supports.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Empty or unbounded sort extent, value outside a declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Partial builtin applied outside its domain (division by zero).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class FreshNameError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsmkit
