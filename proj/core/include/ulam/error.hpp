#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ulam {

enum class ErrorKind {
  DimensionZero,
  NotBijection,
  DimensionMismatch,
  WrongArity,
  VertexRemoved,
  CyclicGraph,
  EmptyMedianSet,
  EmptyDataset,
  BudgetExceeded,
  InvalidConfig,
  InvalidArgument,
  StreamOverflow,
  EmptySketch,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so front ends can map
// it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace ulam
