#include "symdyn/error.hpp"

namespace symdyn {

std::string_view name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::NotSelfProlongable: return "NotSelfProlongable";
    case ErrorKind::TotalityFailure: return "TotalityFailure";
    case ErrorKind::InsufficientMargin: return "InsufficientMargin";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::WordTooShort: return "WordTooShort";
    case ErrorKind::AmbiguousEntry: return "AmbiguousEntry";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace symdyn
