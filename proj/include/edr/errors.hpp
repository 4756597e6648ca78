#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed specs, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

// The neighbor oracle broke symmetry, local finiteness or looped on a vertex.
class OracleFault : public Error {
 public:
  OracleFault(const std::string& vertex, const std::string& what)
      : Error("oracle fault at " + vertex + ": " + what), vertex_(vertex) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

// Declared end data disagrees with what the truncations show.
class MetadataInconsistency : public Error {
 public:
  using Error::Error;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

// A constructed object violates an invariant an earlier stage should have
// established (not a double ray, lefty normalization broken, ...).
class UpstreamFault : public Error {
 public:
  using Error::Error;
};

// A path prefix stops before it clears the separator it is read against.
class NeedsLongerPrefix : public Error {
 public:
  using Error::Error;
};

// Non-fatal: the horizon was too small. Carries how far we got.
class NeedsLargerHorizon : public Error {
 public:
  NeedsLargerHorizon(const std::string& what, std::size_t achieved, int suggested_horizon)
      : Error(what), achieved_(achieved), suggested_(suggested_horizon) {}
  std::size_t achieved() const { return achieved_; }
  int suggested_horizon() const { return suggested_; }

 private:
  std::size_t achieved_;
  int suggested_;
};

// A truncation grew past the configured vertex budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace edr
