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

#ifndef GPTKIT_IO_HPP
#define GPTKIT_IO_HPP

#include <string_view>

#include "json.hpp"

#include "gptkit/cone.hpp"

namespace gptkit {

// Rationals serialize as "p/q" strings (integers as "p"), doubles as JSON
// numbers with round-trip precision.
nlohmann::json to_json(const Scalar& x);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
/// {"label", "dim", "kind", "arithmetic", "tolerance", "unit", "generators", "facets"}.
nlohmann::json to_json(const StateSpace& space);

Scalar scalar_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);
StateSpace state_space_from_json(const nlohmann::json& j);

/// Comma-separated scalars, e.g. "1/2,0,1".
Vector parse_vector(std::string_view text);

}  // namespace gptkit

#endif  // GPTKIT_IO_HPP
