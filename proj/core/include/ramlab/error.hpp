#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramlab {

enum class Errc {
  // graph_core
  IrregularGraph,
  SelfLoop,
  Asymmetric,
  NonSimple,
  Disconnected,
  DegreeTooSmall,
  VertexOutOfRange,
  // builders
  BadParams,
  SamplingExhausted,
  BaseHasSelfLoop,
  UnknownName,
  ParseError,
  InvariantViolation,
  IoError,
  // walk_engine
  ParityOnNonBipartite,
  SpaceMismatch,
  SupportViolation,
  NotReached,
  // spectral_lab
  SizeCap,
  EigenbasisNotOrthonormal,
  VerificationFailed,
  NotRamanujan,
  Bipartite,
  // theory
  AlphaDegenerate,
  POutOfRange,
  LambdaOutOfRange,
  // cli
  Usage,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// ParseError carrying the offending 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ramlab
