#pragma once

#include <stdexcept>
#include <string>

namespace curvetop {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// curve
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};
struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("polynomial is identically zero") {}
};
struct DiscriminantIdenticallyZero : Error {
  DiscriminantIdenticallyZero()
      : Error("y-discriminant vanishes identically (non-reduced input or vertical component)") {}
};
struct GenericityExhausted : Error {
  explicit GenericityExhausted(const std::string& msg) : Error(msg) {}
};

// tracking
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& msg) : Error(msg) {}
};
struct DegenerateFiber : Error {
  explicit DegenerateFiber(const std::string& msg) : Error(msg) {}
};
struct StepUnderflow : Error {
  explicit StepUnderflow(const std::string& msg) : Error(msg) {}
};
struct AmbiguousCluster : Error {
  explicit AmbiguousCluster(const std::string& msg) : Error(msg) {}
};
struct MultipleClusters : Error {
  explicit MultipleClusters(const std::string& msg) : Error(msg) {}
};

// braid
struct PhaseDegeneracy : Error {
  explicit PhaseDegeneracy(const std::string& msg) : Error(msg) {}
};
struct StrandMismatch : Error {
  explicit StrandMismatch(const std::string& msg) : Error(msg) {}
};
struct RankMismatch : Error {
  explicit RankMismatch(const std::string& msg) : Error(msg) {}
};
struct ActionOverflow : Error {
  explicit ActionOverflow(const std::string& msg) : Error(msg) {}
};
struct ExtractionMismatch : Error {
  explicit ExtractionMismatch(const std::string& msg) : Error(msg) {}
};

// monodromy / diagram
struct ArcCrossing : Error {
  explicit ArcCrossing(const std::string& msg) : Error(msg) {}
};
struct PermutationNotIdentity : Error {
  explicit PermutationNotIdentity(const std::string& msg) : Error(msg) {}
};

}  // namespace curvetop
