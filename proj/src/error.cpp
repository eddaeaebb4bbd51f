#include "sqtile/error.hpp"

namespace sqtile {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NotJordan: return "NotJordan";
    case ErrorCode::MarksNotClockwise: return "MarksNotClockwise";
    case ErrorCode::MarksNotDistinct: return "MarksNotDistinct";
    case ErrorCode::SeedOutside: return "SeedOutside";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::OppositeArcViolation: return "OppositeArcViolation";
    case ErrorCode::EmptyBoundaryClass: return "EmptyBoundaryClass";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case ErrorCode::SolveDiverged: return "SolveDiverged";
    case ErrorCode::PoleUnreachable: return "PoleUnreachable";
    case ErrorCode::InconsistentFields: return "InconsistentFields";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::DualityViolated: return "DualityViolated";
    case ErrorCode::MissingNeighbor: return "MissingNeighbor";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::EmptyRender: return "EmptyRender";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sqtile
