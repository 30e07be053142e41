#pragma once

#include <stdexcept>
#include <string>

namespace vfe {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input: syntax errors, presentations that fail
// validation, endomorphisms that do not preserve the relations.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured guard (word length, enumeration budget, quotient degree)
// was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition (element outside a subgroup,
// generator id outside the alphabet, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace vfe
