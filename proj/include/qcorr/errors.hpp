#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define QCORR_DEFINE_ERROR(Name)        \
  class Name : public Error {           \
  public:                               \
    using Error::Error;                 \
  }

QCORR_DEFINE_ERROR(NonHermitianInput);
QCORR_DEFINE_ERROR(NonFiniteParameter);
QCORR_DEFINE_ERROR(NotPositiveSemidefinite);
QCORR_DEFINE_ERROR(InvalidState);
QCORR_DEFINE_ERROR(NegativeRadicand);
QCORR_DEFINE_ERROR(NonUnitDirection);
QCORR_DEFINE_ERROR(ClosedFormMismatch);
QCORR_DEFINE_ERROR(NoSignChange);
QCORR_DEFINE_ERROR(InvalidArgument);
QCORR_DEFINE_ERROR(IoError);

#undef QCORR_DEFINE_ERROR

} // namespace qcorr
