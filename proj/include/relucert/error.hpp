// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relucert {

/// Malformed input file or value (bad rational text, inconsistent JSON, ...).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch between networks, vectors, specs, or domains.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Region enumeration exceeded the configured cap. Verdicts are withheld, never
/// silently certified.
class RegionCapError : public std::runtime_error {
 public:
  RegionCapError(std::uint64_t cap, std::uint64_t reached)
      : std::runtime_error("region cap exceeded: cap=" + std::to_string(cap) +
                           ", reached=" + std::to_string(reached)),
        cap(cap),
        reached(reached) {}
  std::uint64_t cap;
  std::uint64_t reached;
};

/// A documented precondition of an operation does not hold (reports which leg failed).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relucert
