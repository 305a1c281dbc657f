#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FRAMELAB_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

// Input validation.
FRAMELAB_DEFINE_ERROR(InvalidMeasure)
FRAMELAB_DEFINE_ERROR(InvalidFunction)
FRAMELAB_DEFINE_ERROR(InvalidArgument)

// measure_core
FRAMELAB_DEFINE_ERROR(CantorRestriction)

// kaczmarz
FRAMELAB_DEFINE_ERROR(ZeroMass)
FRAMELAB_DEFINE_ERROR(OrderTooLarge)

// dextrodual
FRAMELAB_DEFINE_ERROR(AtomTooClose)
FRAMELAB_DEFINE_ERROR(ParsevalInfeasible)
FRAMELAB_DEFINE_ERROR(MissingAtomValue)
FRAMELAB_DEFINE_ERROR(NotSeparated)
FRAMELAB_DEFINE_ERROR(TruncationOrder)
FRAMELAB_DEFINE_ERROR(SingularGram)

// hardy
FRAMELAB_DEFINE_ERROR(NotAFrame)

#undef FRAMELAB_DEFINE_ERROR

}  // namespace framelab
