#pragma once

#include <stdexcept>
#include <string>

namespace detsum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DependentBasis : Error {
  using Error::Error;
};
struct RadiusTooLarge : Error {
  using Error::Error;
};
struct InvalidFieldData : Error {
  using Error::Error;
};
struct UnsupportedIndex : Error {
  using Error::Error;
};
struct NvdViolation : Error {
  using Error::Error;
};
struct ZeroDeterminantEncountered : Error {
  using Error::Error;
};
struct NotANumberFieldLattice : Error {
  using Error::Error;
};
struct InsufficientRange : Error {
  using Error::Error;
};
struct OutOfRegime : Error {
  using Error::Error;
};
struct RankTooSmall : Error {
  using Error::Error;
};
struct NonUniqueMinimum : Error {
  using Error::Error;
};
struct OddIndexRamified : Error {
  using Error::Error;
};
struct UnsupportedLattice : Error {
  using Error::Error;
};
struct ExactOverflow : Error {
  using Error::Error;
};
struct UsageError : Error {
  using Error::Error;
};

}  // namespace detsum
