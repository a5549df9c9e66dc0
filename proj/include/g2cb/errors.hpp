#pragma once

#include <stdexcept>
#include <string>

namespace g2cb {

enum class Errc {
  ContextMismatch,
  SyntaxError,
  UnknownVariable,
  ZeroPolynomial,
  NotSmooth,
  WrongDegree,
  BadCharacteristic,
  SqrtNotInField,
  Exhausted,
  BaseLocus,
  IndeterminateImage,
  CertificationFailure,
  OriginProjection,
  ZeroParameter,
  OriginFiber,
  AmbiguousQuartic,
  NoQuartic,
  CubicVanishes,
  SkippedUnsplit,
  OutOfRange,
  InvalidInput,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(Errc code);

}  // namespace g2cb
