// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace softplex {

/// Base for every error thrown by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (unknown keys, bad ranges, missing constants).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to an operation (dimension mismatch, empty index set, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined for the given sample, e.g. zero variance.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// The run was refused before or during construction because it would exceed a resource cap.
class RefusalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace softplex
