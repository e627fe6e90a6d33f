#pragma once

#include <stdexcept>
#include <string>

namespace pps {

// Precondition violated by an argument value (inv(0), reducible modulus, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input too large for the dense representations used here.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed literal or file.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed structure does not have its expected shape
// (wrong number of dual classes, non-constant block, ...).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pps
