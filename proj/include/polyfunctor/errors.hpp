#pragma once

#include <stdexcept>
#include <string>

namespace polyfunctor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input: the described set has no points") {}
  using Error::Error;
};

class UnboundedInput : public Error {
 public:
  UnboundedInput() : Error("unbounded input: inequalities do not describe a polytope") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PointNotInImage : public Error {
 public:
  PointNotInImage() : Error("point is not in the image of the map") {}
};

class OriginNotInteriorError : public Error {
 public:
  OriginNotInteriorError() : Error("origin is not in the relative interior") {}
};

class ImageDimTooHigh : public Error {
 public:
  explicit ImageDimTooHigh(std::size_t dim)
      : Error("image dimension " + std::to_string(dim) + " exceeds the supported maximum of 2") {}
};

class NotConvexPosition : public Error {
 public:
  NotConvexPosition() : Error("points are not in convex position") {}
};

class DegenerateHeights : public Error {
 public:
  using Error::Error;
};

class EmptyFiber : public Error {
 public:
  EmptyFiber() : Error("the map is not in the image: empty hom-fiber") {}
};

class DimensionTooHigh : public Error {
 public:
  using Error::Error;
};

/// Work caps. The CLI maps these to a dedicated exit code.
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ScaleLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace polyfunctor
