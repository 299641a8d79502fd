#pragma once

#include <stdexcept>

namespace isingloop {

/// Bad argument or violated precondition (odd chain length, unknown preset, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The auxiliary-space loop touches the origin where a definite answer needs it not to.
class DegenerateLoop : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace isingloop
