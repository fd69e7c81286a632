#include "geodepth/error.hpp"

namespace geodepth {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NotUnitNorm: return "NotUnitNorm";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::ManifoldMismatch: return "ManifoldMismatch";
    case Errc::CutLocus: return "CutLocus";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::ZeroMAD: return "ZeroMAD";
    case Errc::NoValidPole: return "NoValidPole";
    case Errc::SamplerFailure: return "SamplerFailure";
    case Errc::RejectionStall: return "RejectionStall";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

}  // namespace geodepth
