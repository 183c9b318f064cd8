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

#include "gptkit/io.hpp"

#include <string>

#include "gptkit/errors.hpp"

namespace gptkit {

using nlohmann::json;

json to_json(const Scalar& x) {
    if (x.is_rational()) {
        return x.to_string();
    }
    return x.to_double();
}

json to_json(const Vector& v) {
    json out = json::array();
    for (const auto& x : v) {
        out.push_back(to_json(x));
    }
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(to_json(m.row_vector(r)));
    }
    return out;
}

json to_json(const StateSpace& space) {
    const ConeRep& cone = space.cone();
    json out;
    out["label"] = space.label();
    out["dim"] = space.dim();
    out["kind"] = cone.is_polyhedral() ? "polyhedral" : "lorentz";
    out["arithmetic"] = cone.arithmetic() == Arithmetic::rational ? "rational" : "float";
    out["tolerance"] = cone.tolerance();
    out["unit"] = to_json(space.unit());
    if (cone.is_polyhedral()) {
        json gens = json::array();
        for (const auto& g : cone.generators()) {
            gens.push_back(to_json(g));
        }
        json facets = json::array();
        for (const auto& h : cone.facets()) {
            facets.push_back(to_json(h));
        }
        out["generators"] = std::move(gens);
        out["facets"] = std::move(facets);
    }
    return out;
}

Scalar scalar_from_json(const json& j) {
    if (j.is_string()) {
        return Scalar::parse(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Scalar(j.get<long>());
    }
    if (j.is_number()) {
        return Scalar(j.get<double>());
    }
    throw InvalidInput("expected a number or a \"p/q\" string, got " + j.dump());
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) {
        throw InvalidInput("expected an array of scalars");
    }
    Vector out;
    for (const auto& x : j) {
        out.push_back(scalar_from_json(x));
    }
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw InvalidInput("expected a non-empty array of rows");
    }
    std::vector<Vector> rows;
    for (const auto& r : j) {
        rows.push_back(vector_from_json(r));
    }
    return Matrix::from_rows(rows);
}

StateSpace state_space_from_json(const json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const double tol = j.value("tolerance", kDefaultTolerance);
        const std::string label = j.value("label", std::string());
        std::optional<Arithmetic> mode;
        if (j.contains("arithmetic")) {
            mode = j["arithmetic"].get<std::string>() == "float" ? Arithmetic::floating : Arithmetic::rational;
        }
        Vector unit = vector_from_json(j.at("unit"));
        if (j.value("kind", std::string("polyhedral")) == "lorentz") {
            return StateSpace(ConeRep::lorentz(dim, tol), unit, label);
        }
        auto rays = [&](const char* key) {
            std::vector<Vector> out;
            for (const auto& r : j.at(key)) {
                out.push_back(vector_from_json(r));
            }
            return out;
        };
        if (j.contains("generators") && j.contains("facets")) {
            return StateSpace(ConeRep::from_description(rays("generators"), rays("facets"), dim, mode, tol), unit,
                              label);
        }
        if (j.contains("generators")) {
            return StateSpace(ConeRep::from_generators(rays("generators"), dim, mode, tol), unit, label);
        }
        return StateSpace(ConeRep::from_facets(rays("facets"), dim, mode, tol), unit, label);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed state space: ") + e.what());
    }
}

Vector parse_vector(std::string_view text) {
    Vector out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        if (item.empty()) {
            throw InvalidInput("empty entry in vector '" + std::string(text) + "'");
        }
        out.push_back(Scalar::parse(item));
        start = end + 1;
    }
    return out;
}

}  // namespace gptkit
