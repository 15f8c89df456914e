#pragma once

#include <stdexcept>
#include <string>

namespace crepantia {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (group specs, documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// No triangular age-one generating system exists for the group.
class NoAgeOneSystem : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A stage cone of an iterated resolution admits no apex with a smooth
// opposite facet in the refined lattice.
class SemiUnimodularityLost : public Error {
 public:
  using Error::Error;
};

class ResourceLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace crepantia
