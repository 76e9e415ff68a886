// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_ERRORS_HPP
#define RISIM_ERRORS_HPP

#include <stdexcept>

namespace risim {

// Shape mismatch between operands (matrix dimensions, vector lengths).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid or inconsistent configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation invoked in the wrong object state (e.g. step before reset).
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace risim

#endif
