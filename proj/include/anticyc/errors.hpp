// Error codes shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace anticyc {

enum class ErrorCode {
  InvalidArgument,
  BadReduction,
  SmallPrime,
  NonMinimalModel,
  BoundExceeded,
  RamifiedBadPrime,
  AdditiveBadPrime,
  HypothesisFailed,
  NotIntegral,
  MissingData,
  MissingTwist,
  InExceptionalSet,
  Unsupported,
  PrecisionLoss,
  PointAtInfinity,
  NotAdmissible,
  MissingGenerator,
  NotFound,
  NetworkUnavailable,
  Internal,
};

const char* code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(code_name(c)) + ": " + msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace anticyc
