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

#include "gptkit/models.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "gptkit/errors.hpp"

namespace gptkit {

namespace {

int parse_positive(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidInput("bad model parameter in '" + std::string(whole) + "'");
    }
    return value;
}

Matrix rotation(double angle) {
    Matrix m(3, 3);
    m(0, 0) = Scalar(std::cos(angle));
    m(0, 1) = Scalar(-std::sin(angle));
    m(1, 0) = Scalar(std::sin(angle));
    m(1, 1) = Scalar(std::cos(angle));
    m(0, 2) = Scalar(0.0);
    m(1, 2) = Scalar(0.0);
    m(2, 0) = Scalar(0.0);
    m(2, 1) = Scalar(0.0);
    m(2, 2) = Scalar(1.0);
    return m;
}

}  // namespace

std::string ModelDescriptor::name() const {
    switch (family) {
        case ModelFamily::classical:
            return "classical:" + std::to_string(parameter);
        case ModelFamily::polygon:
            return parameter == 4 ? "squit" : "polygon:" + std::to_string(parameter);
        case ModelFamily::ball:
            return "ball:" + std::to_string(parameter);
    }
    return {};
}

ModelDescriptor parse_model_name(std::string_view text) {
    if (text == "squit") {
        return {ModelFamily::polygon, 4};
    }
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw InvalidInput("unknown model '" + std::string(text) + "'");
    }
    std::string_view family = text.substr(0, colon);
    int parameter = parse_positive(text.substr(colon + 1), text);
    ModelDescriptor d;
    d.parameter = parameter;
    if (family == "classical") {
        d.family = ModelFamily::classical;
        if (parameter < 1) {
            throw InvalidInput("classical models need n >= 1");
        }
    } else if (family == "polygon") {
        d.family = ModelFamily::polygon;
        if (parameter < 3) {
            throw InvalidInput("polygon models need n >= 3");
        }
    } else if (family == "ball") {
        d.family = ModelFamily::ball;
        if (parameter < 1) {
            throw InvalidInput("ball models need d >= 1");
        }
    } else {
        throw InvalidInput("unknown model family '" + std::string(family) + "'");
    }
    return d;
}

StateSpace make_model(const ModelDescriptor& descriptor, double tol) {
    switch (descriptor.family) {
        case ModelFamily::classical:
            return make_classical(descriptor.parameter);
        case ModelFamily::polygon:
            return make_polygon(descriptor.parameter, tol);
        case ModelFamily::ball:
            return make_ball(descriptor.parameter, tol);
    }
    throw InvalidInput("unknown model family");
}

StateSpace make_model(std::string_view name, double tol) { return make_model(parse_model_name(name), tol); }

StateSpace make_classical(int n) {
    if (n < 1) {
        throw InvalidInput("classical(n) needs n >= 1");
    }
    const auto dim = static_cast<std::size_t>(n);
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        Vector e(dim);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return StateSpace(ConeRep::from_generators(gens, dim), Vector(dim, Scalar(1)),
                      ModelDescriptor{ModelFamily::classical, n}.name());
}

StateSpace make_polygon(int n, double tol) {
    if (n < 3) {
        throw InvalidInput("polygon(n) needs n >= 3");
    }
    std::vector<Vector> gens;
    if (n == 4) {
        gens = {make_vector({1, 1, 1}), make_vector({-1, 1, 1}), make_vector({-1, -1, 1}), make_vector({1, -1, 1})};
        return StateSpace(ConeRep::from_generators(gens, 3, Arithmetic::rational, tol), make_vector({0, 0, 1}),
                          "squit");
    }
    for (int k = 0; k < n; ++k) {
        double angle = 2.0 * std::numbers::pi * k / n;
        gens.push_back({Scalar(std::cos(angle)), Scalar(std::sin(angle)), Scalar(1.0)});
    }
    return StateSpace(ConeRep::from_generators(gens, 3, Arithmetic::floating, tol), make_vector({0, 0, 1}),
                      ModelDescriptor{ModelFamily::polygon, n}.name());
}

StateSpace make_ball(int d, double tol) {
    if (d < 1) {
        throw InvalidInput("ball(d) needs d >= 1");
    }
    const auto dim = static_cast<std::size_t>(d) + 1;
    Vector unit(dim);
    unit.back() = 1;
    return StateSpace(ConeRep::lorentz(dim, tol), unit, ModelDescriptor{ModelFamily::ball, d}.name());
}

StateSpace direct_sum(const StateSpace& a, const StateSpace& b) {
    const std::size_t dim = a.dim() + b.dim();
    std::vector<Vector> gens;
    for (const auto& g : a.cone().generators()) {
        Vector v(dim);
        std::copy(g.begin(), g.end(), v.begin());
        gens.push_back(std::move(v));
    }
    for (const auto& g : b.cone().generators()) {
        Vector v(dim);
        std::copy(g.begin(), g.end(), v.begin() + static_cast<long>(a.dim()));
        gens.push_back(std::move(v));
    }
    Vector unit(a.unit());
    unit.insert(unit.end(), b.unit().begin(), b.unit().end());
    const double tol = std::max(a.tolerance(), b.tolerance());
    std::optional<Arithmetic> mode;
    if (a.arithmetic() == Arithmetic::floating || b.arithmetic() == Arithmetic::floating) {
        mode = Arithmetic::floating;
    }
    std::string label = (a.label().empty() || b.label().empty()) ? "" : a.label() + "+" + b.label();
    return StateSpace(ConeRep::from_generators(gens, dim, mode, tol), unit, label);
}

std::vector<Matrix> polygon_rotation_group(int n) {
    if (n < 3) {
        throw InvalidInput("polygon(n) needs n >= 3");
    }
    std::vector<Matrix> group;
    if (n == 4) {
        Matrix quarter(3, 3);
        quarter(0, 1) = -1;
        quarter(1, 0) = 1;
        quarter(2, 2) = 1;
        Matrix g = Matrix::identity(3);
        for (int k = 0; k < 4; ++k) {
            group.push_back(g);
            g = quarter * g;
        }
        return group;
    }
    for (int k = 0; k < n; ++k) {
        group.push_back(rotation(2.0 * std::numbers::pi * k / n));
    }
    return group;
}

std::vector<Matrix> classical_cyclic_group(int n) {
    if (n < 1) {
        throw InvalidInput("classical(n) needs n >= 1");
    }
    const auto dim = static_cast<std::size_t>(n);
    std::vector<Matrix> group;
    for (std::size_t shift = 0; shift < dim; ++shift) {
        Matrix p(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            p((i + shift) % dim, i) = 1;
        }
        group.push_back(std::move(p));
    }
    return group;
}

Matrix polygon_self_duality_map(int n) {
    if (n < 3) {
        throw InvalidInput("polygon(n) needs n >= 3");
    }
    if (n == 4) {
        // √2·R(π/4) in the (x, y) plane: facet normals (±1,0,1), (0,±1,1) go to the vertices.
        Matrix m(3, 3);
        m(0, 0) = 1;
        m(0, 1) = -1;
        m(1, 0) = 1;
        m(1, 1) = 1;
        m(2, 2) = 1;
        return m;
    }
    // Facet normals sit at odd multiples of π/n with horizontal-to-vertical
    // ratio 1/cos(π/n); scale by cos(π/n) and, for even n, rotate by π/n.
    const double scale = std::cos(std::numbers::pi / n);
    const double angle = (n % 2 == 0) ? std::numbers::pi / n : 0.0;
    Matrix m = rotation(angle);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = Scalar(scale) * m(i, j);
        }
    }
    return m;
}

Matrix classical_self_duality_map(int n) {
    if (n < 1) {
        throw InvalidInput("classical(n) needs n >= 1");
    }
    return Scalar::ratio(1, n) * Matrix::identity(static_cast<std::size_t>(n));
}

SymmetricModel make_symmetric_model(std::string_view model, std::string_view group) {
    ModelDescriptor d = parse_model_name(model);
    if (d.family == ModelFamily::ball) {
        throw UnsupportedKind("ball models have no finite transitive symmetry group here");
    }
    const std::string expected = "z" + std::to_string(d.parameter);
    if (group != expected) {
        throw InvalidInput("group '" + std::string(group) + "' not supported for " + d.name() + " (use " + expected +
                           ")");
    }
    if (d.family == ModelFamily::classical) {
        return {make_classical(d.parameter), classical_cyclic_group(d.parameter),
                classical_self_duality_map(d.parameter)};
    }
    return {make_polygon(d.parameter), polygon_rotation_group(d.parameter), polygon_self_duality_map(d.parameter)};
}

}  // namespace gptkit
