#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sqtile {

enum class ErrorCode {
  SchemaError,
  NotJordan,
  MarksNotClockwise,
  MarksNotDistinct,
  SeedOutside,
  MeshTooCoarse,
  OppositeArcViolation,
  EmptyBoundaryClass,
  Disconnected,
  NonPlanarEmbedding,
  SolveDiverged,
  PoleUnreachable,
  InconsistentFields,
  ValidationFailed,
  DualityViolated,
  MissingNeighbor,
  NotInterior,
  EmptyRender,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code and the module that
// raised it; the CLI turns these into exit statuses and error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace sqtile
