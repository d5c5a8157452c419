#ifndef HYPERDET_ERRORS_HPP
#define HYPERDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperdet {

enum class ErrorKind {
  InvalidInput,
  ParseError,
  DegreeMismatch,
  SingularMatrix,
  TransversalityFailure,
  PairingFailure,
  DimensionError,
  NotInSpan,
  RankDeficient,
  LargeResidual,
  NonPositiveScale,
  NotHyperbolic,
  IndefiniteOutput,
  IllConditionedFit,
  InternalError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define HYPERDET_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message)                          \
        : Error(ErrorKind::Name, message) {}                           \
  }

HYPERDET_DEFINE_ERROR(InvalidInput);
HYPERDET_DEFINE_ERROR(ParseError);
HYPERDET_DEFINE_ERROR(DegreeMismatch);
HYPERDET_DEFINE_ERROR(SingularMatrix);
HYPERDET_DEFINE_ERROR(TransversalityFailure);
HYPERDET_DEFINE_ERROR(PairingFailure);
HYPERDET_DEFINE_ERROR(DimensionError);
HYPERDET_DEFINE_ERROR(NotInSpan);
HYPERDET_DEFINE_ERROR(RankDeficient);
HYPERDET_DEFINE_ERROR(LargeResidual);
HYPERDET_DEFINE_ERROR(NonPositiveScale);
HYPERDET_DEFINE_ERROR(NotHyperbolic);
HYPERDET_DEFINE_ERROR(IndefiniteOutput);
HYPERDET_DEFINE_ERROR(IllConditionedFit);
HYPERDET_DEFINE_ERROR(InternalError);

#undef HYPERDET_DEFINE_ERROR

}  // namespace hyperdet

#endif
