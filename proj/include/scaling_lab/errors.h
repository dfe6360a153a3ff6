// Copyright 2026 The Scaling Lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SCALING_LAB_ERRORS_H_
#define SCALING_LAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace scaling_lab {

// Base for every error raised by the library. The CLI maps each subclass to
// an exit code (see cli/commands.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ModelShape violates its invariants (non-positive field, d mod h != 0).
class InvalidShape : public Error {
 public:
  using Error::Error;
};

// Out-of-range constant or argument (alpha <= 1, lambda outside (0, 1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Tensor or grid dimensions do not line up.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Data is well-formed but cannot support the requested fit.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

}  // namespace scaling_lab

#endif  // SCALING_LAB_ERRORS_H_
