#pragma once

#include <stdexcept>
#include <string>

namespace polytube {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NonInvertibleMap : Error {
  explicit NonInvertibleMap(const std::string& what) : Error(what) {}
};

struct UnboundedPolytope : Error {
  explicit UnboundedPolytope(const std::string& what) : Error(what) {}
};

struct UnboundedSubtrahend : Error {
  explicit UnboundedSubtrahend(const std::string& what) : Error(what) {}
};

struct DimensionCapExceeded : Error {
  explicit DimensionCapExceeded(const std::string& what) : Error(what) {}
};

struct DegenerateDirections : Error {
  explicit DegenerateDirections(const std::string& what) : Error(what) {}
};

struct EmptyList : Error {
  explicit EmptyList(const std::string& what) : Error(what) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what) : Error(what) {}
};

struct HorizonMismatch : Error {
  explicit HorizonMismatch(const std::string& what) : Error(what) {}
};

struct InvalidProbability : Error {
  explicit InvalidProbability(const std::string& what) : Error(what) {}
};

struct InvalidTemplate : Error {
  explicit InvalidTemplate(const std::string& what) : Error(what) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

struct GridCapExceeded : Error {
  explicit GridCapExceeded(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace polytube
