#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontoquery {

/// Machine-readable failure categories. The string form (see code_name) is
/// part of the HTTP error payload contract.
enum class ErrorCode {
  SyntaxError,
  UnresolvedPrefix,
  MalformedIri,
  UnknownClass,
  UnknownSymbol,
  UnknownNode,
  InapplicableProperty,
  IncompatibleTarget,
  TypeMismatch,
  DatatypeMismatch,
  NothingToUndo,
  NonLeafRemoval,
  GrammarError,
  UnknownDataset,
  UnflaggedColumn,
  UnknownJob,
  SessionNotFound,
  InvalidArgument,
  ConfigError,
  IoError,
  Internal,
};

std::string_view code_name(ErrorCode code) noexcept;

/// 400/404/500 classification used by the HTTP adapter and the CLI.
enum class ErrorClass { Validation, NotFound, Io, Internal };
ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse errors additionally carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ontoquery
