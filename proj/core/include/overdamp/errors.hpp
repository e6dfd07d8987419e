#pragma once

#include <stdexcept>
#include <string>

namespace overdamp {

/// Argument outside an operation's domain (bad parameter, violated precondition).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel failed to meet its contract (quadrature depth, eigensolver, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace overdamp
