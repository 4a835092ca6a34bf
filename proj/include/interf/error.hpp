#pragma once

#include <stdexcept>
#include <string>

namespace interf {

// Raised when an input lies outside an operation's numeric domain
// (non-unimodular element, non-physical state, negative exponent, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace interf
