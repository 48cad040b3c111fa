#include "ontoquery/error.hpp"

namespace ontoquery {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::UnresolvedPrefix: return "unresolved-prefix";
    case ErrorCode::MalformedIri: return "malformed-iri";
    case ErrorCode::UnknownClass: return "unknown-class";
    case ErrorCode::UnknownSymbol: return "unknown-symbol";
    case ErrorCode::UnknownNode: return "unknown-node";
    case ErrorCode::InapplicableProperty: return "inapplicable-property";
    case ErrorCode::IncompatibleTarget: return "incompatible-target";
    case ErrorCode::TypeMismatch: return "type-mismatch";
    case ErrorCode::DatatypeMismatch: return "datatype-mismatch";
    case ErrorCode::NothingToUndo: return "nothing-to-undo";
    case ErrorCode::NonLeafRemoval: return "non-leaf-removal";
    case ErrorCode::GrammarError: return "grammar-error";
    case ErrorCode::UnknownDataset: return "unknown-dataset";
    case ErrorCode::UnflaggedColumn: return "unflagged-column";
    case ErrorCode::UnknownJob: return "unknown-job";
    case ErrorCode::SessionNotFound: return "session-not-found";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ConfigError: return "config-error";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

ErrorClass classify(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownClass:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownDataset:
    case ErrorCode::UnknownJob:
    case ErrorCode::SessionNotFound:
      return ErrorClass::NotFound;
    case ErrorCode::IoError:
      return ErrorClass::Io;
    case ErrorCode::Internal:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Validation;
  }
}

ParseError::ParseError(ErrorCode code, const std::string& message,
                       std::size_t line, std::size_t column)
    : Error(code, message + " at line " + std::to_string(line) + ", column " +
                      std::to_string(column)),
      line_(line),
      column_(column) {}

}  // namespace ontoquery
