#ifndef HYP2_ERROR_HPP
#define HYP2_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyp2 {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2 (input error) unless stated otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HYP2_DEFINE_ERROR(Name)                    \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Error(std::string(#Name ": ") + what) {} \
  }

HYP2_DEFINE_ERROR(DivisionByZero);
HYP2_DEFINE_ERROR(InvalidField);
HYP2_DEFINE_ERROR(FieldTooSmall);
HYP2_DEFINE_ERROR(PoleAtInfinity);
HYP2_DEFINE_ERROR(Unramified);
HYP2_DEFINE_ERROR(InvalidCurve);
HYP2_DEFINE_ERROR(DimensionMismatch);
HYP2_DEFINE_ERROR(CtxMismatch);
HYP2_DEFINE_ERROR(NotAChain);
HYP2_DEFINE_ERROR(MixedStep);
HYP2_DEFINE_ERROR(ParseError);

#undef HYP2_DEFINE_ERROR

}  // namespace hyp2

#endif  // HYP2_ERROR_HPP
