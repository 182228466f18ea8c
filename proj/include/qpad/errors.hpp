// Copyright 2026 The qpad Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qpad {

/// A computation would exceed the materialization limits of a desk-scale run.
/// The message names the parameter to shrink.
class ResourceLimit : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative numerical routine failed to converge.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A matrix or state violates a density-matrix invariant.
class InvalidState : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qpad
