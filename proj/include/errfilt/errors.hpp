// Copyright 2026 The errfilt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace errfilt {

// Thrown when an input violates a documented precondition (bad
// normalization, out-of-range parameter, dimension mismatch, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation method is requested outside its supported
// domain (e.g. quadrature for more than two modes).
struct UnsupportedMethodError : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown when a quantity is mathematically undefined for the given input
// (e.g. fidelity of a zero-trace state).
struct UndefinedValueError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace errfilt
