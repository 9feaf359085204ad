#pragma once

#include <stdexcept>
#include <string>

namespace mfglab {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// g^{-1} applied outside the range of g; signals a non-physical state.
struct RangeError : std::runtime_error {
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

struct WindowError : std::runtime_error {
  explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

struct CflError : std::runtime_error {
  explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

struct PositivityError : std::runtime_error {
  explicit PositivityError(const std::string& what) : std::runtime_error(what) {}
};

struct HyperbolicityError : std::runtime_error {
  explicit HyperbolicityError(const std::string& what) : std::runtime_error(what) {}
};

struct StabilityError : std::runtime_error {
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

struct IntegrationError : std::runtime_error {
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

struct FitError : std::runtime_error {
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mfglab
