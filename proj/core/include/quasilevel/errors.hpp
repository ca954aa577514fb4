#pragma once

#include <stdexcept>
#include <string>

#include "quasilevel/vec2.hpp"

namespace quasilevel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IntegerOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidPair : public Error {
 public:
  using Error::Error;
};

class ZeroEpsilon : public Error {
 public:
  ZeroEpsilon() : Error("level epsilon must be nonzero") {}
};

class ResolutionTooCoarse : public Error {
 public:
  using Error::Error;
};

class NotPeriodic : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class AmbiguousClassification : public Error {
 public:
  using Error::Error;
};

class NotSymmetricShift : public Error {
 public:
  NotSymmetricShift(Vec2 shift, double distance)
      : Error("shift (" + std::to_string(shift.x) + ", " + std::to_string(shift.y) +
              ") is not a symmetric shift (distance " + std::to_string(distance) + ")"),
        shift_(shift),
        distance_(distance) {}

  Vec2 shift() const { return shift_; }
  double distance() const { return distance_; }

 private:
  Vec2 shift_;
  double distance_;
};

/// A Newton seed that did not converge. Carries the seed so it can be reported.
class NewtonStall : public Error {
 public:
  NewtonStall(Vec2 seed, double residual)
      : Error("Newton refinement stalled from seed (" + std::to_string(seed.x) + ", " +
              std::to_string(seed.y) + "), |grad| = " + std::to_string(residual)),
        seed_(seed),
        residual_(residual) {}

  Vec2 seed() const { return seed_; }
  double residual() const { return residual_; }

 private:
  Vec2 seed_;
  double residual_;
};

class NonGenericNet : public Error {
 public:
  using Error::Error;
};

class MemoryCapExceeded : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace quasilevel
