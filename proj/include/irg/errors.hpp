#pragma once

#include <stdexcept>
#include <string>

namespace irg {

// Malformed input: bad JSON, dimension mismatch, invalid builder parameters.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid request refused by a precondition (wrong phase, resource
// guard, lost domination direction). CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace irg
