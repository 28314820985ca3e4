#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fgq {

// Every failure the library reports carries a stable kind tag. The CLI maps
// kinds to exit codes; tests match on them.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), m_kind(std::move(kind)) {}

  const std::string& kind() const { return m_kind; }

private:
  std::string m_kind;
};

namespace errs {
inline constexpr const char* UnknownType = "UnknownType";
inline constexpr const char* DimensionMismatch = "DimensionMismatch";
inline constexpr const char* NotDominant = "NotDominant";
inline constexpr const char* DatumMismatch = "DatumMismatch";
inline constexpr const char* NotWeylInvariant = "NotWeylInvariant";
inline constexpr const char* LatticeMismatch = "LatticeMismatch";
inline constexpr const char* MissingWitness = "MissingWitness";
inline constexpr const char* NoWitnessAvailable = "NoWitnessAvailable";
inline constexpr const char* PropernessUncertified = "PropernessUncertified";
inline constexpr const char* DegreeBoundMissing = "DegreeBoundMissing";
inline constexpr const char* NotPointedCone = "NotPointedCone";
inline constexpr const char* OddDimension = "OddDimension";
inline constexpr const char* NotStronglyElliptic = "NotStronglyElliptic";
inline constexpr const char* InfiniteA = "InfiniteA";
inline constexpr const char* InvalidModel = "InvalidModel";
inline constexpr const char* ParseError = "ParseError";
}  // namespace errs

[[noreturn]] inline void fail(const char* kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fgq
