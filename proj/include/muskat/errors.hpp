#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

// Base class for all failures this library can signal. Every failure mode of
// the evolution pipeline maps onto one of these so callers can translate them
// into trajectory termination reasons or process exit codes.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arc-chord functional blew up: two distinct parameter values map to
// (numerically) the same point, or the chord denominator fell below the floor.
class ArcChordViolation : public Error {
public:
  ArcChordViolation(const std::string& msg, double alpha, double beta)
      : Error(msg), alpha(alpha), beta(beta) {}
  double alpha;
  double beta;
};

// Two distinct interfaces came close enough that the interaction kernel
// denominator dropped below its floor away from the diagonal.
class NearTouching : public Error {
public:
  NearTouching(const std::string& msg, double min_separation)
      : Error(msg), min_separation(min_separation) {}
  double min_separation;
};

class QuadratureNonconvergence : public Error {
public:
  QuadratureNonconvergence(const std::string& msg, double worst_a, double worst_b,
                           double worst_err)
      : Error(msg), worst_a(worst_a), worst_b(worst_b), worst_err(worst_err) {}
  double worst_a;      // worst subinterval, left end
  double worst_b;      // worst subinterval, right end
  double worst_err;    // its error estimate
};

class UnsupportedGrid : public Error {
public:
  using Error::Error;
};

class GridTooCoarse : public Error {
public:
  using Error::Error;
};

class AliasingError : public Error {
public:
  using Error::Error;
};

class SplineError : public Error {
public:
  using Error::Error;
};

class StepCollapse : public Error {
public:
  StepCollapse(const std::string& msg, double t, double dt)
      : Error(msg), t(t), dt(dt) {}
  double t;
  double dt;
};

// turnover-construction failures
class ConstructionError : public Error {  // a z* sign condition failed
public:
  ConstructionError(const std::string& msg, const std::string& condition)
      : Error(msg), condition(condition) {}
  std::string condition;
};

class UseReducida : public Error {  // general d_alpha v1 path rejected the input
public:
  using Error::Error;
};

class FamilyInvalid : public Error {  // the (beta1, pi) contribution is not negative
public:
  using Error::Error;
};

class SearchFailure : public Error {  // b-doubling exceeded its ceiling
public:
  using Error::Error;
};

class IncreaseModes : public Error {  // smoothing destroyed the certificate
public:
  using Error::Error;
};

class InsufficientResolution : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class VerificationFailure : public Error {
public:
  using Error::Error;
};

}  // namespace muskat
