#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecoidx {

enum class ErrorCode {
  EmptyInput,
  InvalidNodeId,
  InvalidWeight,
  InvalidBijection,
  TooSmall,
  NoEdges,
  UnassignedNode,
  DegenerateClub,
  DomainError,
  MissingField,
  OutOfBound,
  BadK,
  BadConfig,
  RetryExhausted,
  BadCorpusShape,
  ParseError,
  MissingFamily,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidNodeId: return "InvalidNodeId";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::InvalidBijection: return "InvalidBijection";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::UnassignedNode: return "UnassignedNode";
    case ErrorCode::DegenerateClub: return "DegenerateClub";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::OutOfBound: return "OutOfBound";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::BadCorpusShape: return "BadCorpusShape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingFamily: return "MissingFamily";
  }
  return "Unknown";
}

// All library failures are reported through this exception; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecoidx
