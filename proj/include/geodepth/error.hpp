#pragma once

#include <stdexcept>
#include <string>

namespace geodepth {

/// Failure categories surfaced by the library. The CLI maps them onto its
/// exit-code contract (see cli/commands.hpp).
enum class Errc {
  WrongDimension,
  NotUnitNorm,
  NotSymmetric,
  NotPositiveDefinite,
  ManifoldMismatch,
  CutLocus,
  DegenerateSample,
  ZeroMAD,
  NoValidPole,
  SamplerFailure,
  RejectionStall,
  UnknownPreset,
  CoincidentPoints,
  InvalidArgument,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  /// Message without the leading kind.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace geodepth
