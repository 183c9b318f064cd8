// Copyright 2026 The gpt-kit Authors
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

#ifndef GPTKIT_ERRORS_HPP
#define GPTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gptkit {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix shapes do not agree.
class DimensionMismatch : public Error {
 public:
    using Error::Error;
};

/// A cone is not full-dimensional, not pointed, or a unit is not strictly positive.
class DegenerateCone : public Error {
 public:
    using Error::Error;
};

/// The operation needs enumerated generators/facets but got a Lorentz cone (or similar).
class UnsupportedKind : public Error {
 public:
    using Error::Error;
};

/// Vertex/facet enumeration was asked to run above the supported dimension.
class DimensionCapExceeded : public Error {
 public:
    using Error::Error;
};

/// The LP solver stopped without a verdict (iteration limit).
class SolverFailure : public Error {
 public:
    using Error::Error;
};

/// A combinatorial search hit its configured cap before finishing.
class SearchCapExceeded : public Error {
 public:
    using Error::Error;
};

/// Malformed user input: bad model names, invalid arguments, broken JSON documents.
class InvalidInput : public Error {
 public:
    using Error::Error;
};

}  // namespace gptkit

#endif  // GPTKIT_ERRORS_HPP
