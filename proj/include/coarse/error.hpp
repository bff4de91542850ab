#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarse {

enum class Errc {
  // metric-core
  NotSquare,
  NonFinite,
  Asymmetric,
  NegativeEntry,
  ZeroDistance,
  TriangleViolation,
  EmptyInput,
  // group-quotients
  InvalidPermutation,
  OrderExceeded,
  NotAHomomorphism,
  NonMonotoneFiltration,
  // spectral
  Disconnected,
  InvalidGraph,
  GraphMismatch,
  // embed-opt
  NoFarPairs,
  TooManyPoints,
  UnsupportedPair,
  NotPSD,
  InvalidDegree,
  CutLimitExceeded,
  SectionInvalid,
  NotInKernel,
  SupportRadiusExceeded,
  InvalidKernel,
  // warped-cone
  ZeroDiameter,
  InvalidLevels,
  // io / cli
  ParseError,
  SchemaError,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

/// Exception carrying a machine-readable code. `indices` holds the offending
/// points (e.g. the triple of a triangle violation) when there are any.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        indices_(std::move(indices)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace coarse
