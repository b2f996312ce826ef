#pragma once

#include <stdexcept>
#include <string>

namespace nvlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NVLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

NVLAB_DEFINE_ERROR(RingMismatch);
NVLAB_DEFINE_ERROR(NotLocalizable);
NVLAB_DEFINE_ERROR(NotAUnit);
NVLAB_DEFINE_ERROR(SeriesDomainError);
NVLAB_DEFINE_ERROR(ParseError);
NVLAB_DEFINE_ERROR(DimensionMismatch);
NVLAB_DEFINE_ERROR(NonSquare);
NVLAB_DEFINE_ERROR(DivisionByZero);
NVLAB_DEFINE_ERROR(InvalidComplex);
NVLAB_DEFINE_ERROR(NotAChainMap);
NVLAB_DEFINE_ERROR(UnsupportedExtension);
NVLAB_DEFINE_ERROR(NotAcyclic);
NVLAB_DEFINE_ERROR(PivotFailure);
NVLAB_DEFINE_ERROR(NotInvertible);
NVLAB_DEFINE_ERROR(InvalidDatum);
NVLAB_DEFINE_ERROR(LabelNotFound);
NVLAB_DEFINE_ERROR(InvalidOrbit);
NVLAB_DEFINE_ERROR(Unsupported);
NVLAB_DEFINE_ERROR(SchemaError);

#undef NVLAB_DEFINE_ERROR

}  // namespace nvlab
