#include "rigidswap/error.hpp"

namespace rigidswap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFace: return "InvalidFace";
    case ErrorCode::EulerViolation: return "EulerViolation";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::NotThreeConnected: return "NotThreeConnected";
    case ErrorCode::DuplicateEdgeInFacePair: return "DuplicateEdgeInFacePair";
    case ErrorCode::OverlappingLabels: return "OverlappingLabels";
    case ErrorCode::UnknownFace: return "UnknownFace";
    case ErrorCode::ChordAlreadyEdge: return "ChordAlreadyEdge";
    case ErrorCode::NotTriangulated: return "NotTriangulated";
    case ErrorCode::CollinearBlockBoundary: return "CollinearBlockBoundary";
    case ErrorCode::FillDependentAfterRetries: return "FillDependentAfterRetries";
    case ErrorCode::NotEquilibrium: return "NotEquilibrium";
    case ErrorCode::Unresolvable: return "Unresolvable";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NotACutSet: return "NotACutSet";
    case ErrorCode::NewFillNotIsostatic: return "NewFillNotIsostatic";
    case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::CycleViolation: return "CycleViolation";
    case ErrorCode::BlockLoadNotEquilibrium: return "BlockLoadNotEquilibrium";
    case ErrorCode::BlockResolutionFailed: return "BlockResolutionFailed";
    case ErrorCode::GeneralPositionViolation: return "GeneralPositionViolation";
    case ErrorCode::NotOnHole: return "NotOnHole";
    case ErrorCode::NotOnBlock: return "NotOnBlock";
    case ErrorCode::CoplanarAfterRetries: return "CoplanarAfterRetries";
    case ErrorCode::NoGeneralPositionFound: return "NoGeneralPositionFound";
    case ErrorCode::NotGenericallyIsostatic: return "NotGenericallyIsostatic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingConfiguration: return "MissingConfiguration";
  }
  return "Unknown";
}

}  // namespace rigidswap
