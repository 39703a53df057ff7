//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace seedmatch {

// Base of everything the library throws on bad input. The CLI maps each
// subclass to a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values or inconsistent dimensions. Exit code 2.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. a weighted
// graph passed to a disagreement counter, a probability on the boundary).
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// A documented precondition of an algorithm is violated (e.g. RGM with no
// seeds).
class PreconditionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Malformed input file or unreadable/unwritable path. Exit code 3.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Request exceeds an enumeration cap. Exit code 4.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace seedmatch
