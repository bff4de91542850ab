#include "coarse/error.hpp"

namespace coarse {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NonFinite: return "NonFinite";
    case Errc::Asymmetric: return "Asymmetric";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::ZeroDistance: return "ZeroDistance";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::OrderExceeded: return "OrderExceeded";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::NonMonotoneFiltration: return "NonMonotoneFiltration";
    case Errc::Disconnected: return "Disconnected";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::GraphMismatch: return "GraphMismatch";
    case Errc::NoFarPairs: return "NoFarPairs";
    case Errc::TooManyPoints: return "TooManyPoints";
    case Errc::UnsupportedPair: return "UnsupportedPair";
    case Errc::NotPSD: return "NotPSD";
    case Errc::InvalidDegree: return "InvalidDegree";
    case Errc::CutLimitExceeded: return "CutLimitExceeded";
    case Errc::SectionInvalid: return "SectionInvalid";
    case Errc::NotInKernel: return "NotInKernel";
    case Errc::SupportRadiusExceeded: return "SupportRadiusExceeded";
    case Errc::InvalidKernel: return "InvalidKernel";
    case Errc::ZeroDiameter: return "ZeroDiameter";
    case Errc::InvalidLevels: return "InvalidLevels";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace coarse
