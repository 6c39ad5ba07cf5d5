#include "ulam/error.hpp"

namespace ulam {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionZero: return "DimensionZero";
    case ErrorKind::NotBijection: return "NotBijection";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::VertexRemoved: return "VertexRemoved";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::EmptyMedianSet: return "EmptyMedianSet";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StreamOverflow: return "StreamOverflow";
    case ErrorKind::EmptySketch: return "EmptySketch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace ulam
