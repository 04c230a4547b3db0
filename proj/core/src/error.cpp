#include "ramlab/error.hpp"

namespace ramlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::IrregularGraph: return "IrregularGraph";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::Asymmetric: return "Asymmetric";
    case Errc::NonSimple: return "NonSimple";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::BadParams: return "BadParams";
    case Errc::SamplingExhausted: return "SamplingExhausted";
    case Errc::BaseHasSelfLoop: return "BaseHasSelfLoop";
    case Errc::UnknownName: return "UnknownName";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::IoError: return "IoError";
    case Errc::ParityOnNonBipartite: return "ParityOnNonBipartite";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::NotReached: return "NotReached";
    case Errc::SizeCap: return "SizeCap";
    case Errc::EigenbasisNotOrthonormal: return "EigenbasisNotOrthonormal";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::NotRamanujan: return "NotRamanujan";
    case Errc::Bipartite: return "Bipartite";
    case Errc::AlphaDegenerate: return "AlphaDegenerate";
    case Errc::POutOfRange: return "POutOfRange";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ramlab
