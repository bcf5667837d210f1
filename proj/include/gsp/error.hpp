#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsp {

enum class ErrorCode {
  IndexOutOfRange,
  DuplicateEdge,
  SelfLoop,
  NonPositiveWeight,
  InvalidArgument,
  IsolatedVertex,
  LengthMismatch,
  NotSymmetric,
  NoConvergence,
  OrderExceedsSize,
  IllConditioned,
  NegativeAlpha,
  Disconnected,
  TooSmall,
  CannotConnect,
  ZeroNoise,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OrderExceedsSize: return "OrderExceedsSize";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NegativeAlpha: return "NegativeAlpha";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::CannotConnect: return "CannotConnect";
    case ErrorCode::ZeroNoise: return "ZeroNoise";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require_same_length(std::size_t expected, std::size_t actual, std::string_view what) {
  if (expected != actual) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": expected length " +
                                               std::to_string(expected) + ", got " +
                                               std::to_string(actual));
  }
}

}  // namespace detail
}  // namespace gsp
