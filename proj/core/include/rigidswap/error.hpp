#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidswap {

enum class ErrorCode {
  // poly_core
  InvalidFace,
  EulerViolation,
  NonManifoldEdge,
  NonManifoldVertex,
  OrientationMismatch,
  NotThreeConnected,
  DuplicateEdgeInFacePair,
  OverlappingLabels,
  UnknownFace,
  ChordAlreadyEdge,
  NotTriangulated,
  // statics
  CollinearBlockBoundary,
  FillDependentAfterRetries,
  NotEquilibrium,
  Unresolvable,
  DegenerateConfiguration,
  NotACutSet,
  NewFillNotIsostatic,
  // bodyhinge
  InconsistentAssignment,
  NotACycle,
  // swap_iso
  NotSeparated,
  CycleViolation,
  BlockLoadNotEquilibrium,
  BlockResolutionFailed,
  GeneralPositionViolation,
  // gusset
  NotOnHole,
  NotOnBlock,
  CoplanarAfterRetries,
  NoGeneralPositionFound,
  // conditions
  NotGenericallyIsostatic,
  // cli_io
  ParseError,
  MissingConfiguration,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable code alongside a diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rigidswap
