#pragma once

#include <stdexcept>

namespace cslab {

/// A matrix that has to be full rank is not (within the SVD tolerance).
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bandpass decimation would fold two support bins onto one bin, or fold a
/// support bin onto a bin that cannot carry it.
class AliasCollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subsampling factor that does not divide the ambient dimension.
class DivisibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cslab
