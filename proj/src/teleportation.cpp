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

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/protocols.hpp"

namespace gptkit {

namespace {

double tol_of(const StateSpace& a, const StateSpace& b) { return std::max(a.tolerance(), b.tolerance()); }

bool approx_identity(const Matrix& m, double tol) { return approx_equal(m, Matrix::identity(m.rows()), tol); }

}  // namespace

TeleportationCertificate verify_teleportation(const StateSpace& a, const StateSpace& b, const BipartiteEffect& f,
                                              const BipartiteState& omega) {
    if (f.a().dim() != a.dim() || f.b().dim() != b.dim() || omega.a().dim() != b.dim() ||
        omega.b().dim() != a.dim()) {
        throw DimensionMismatch("teleportation needs f on A(x)B and omega on B(x)A");
    }
    if (!f.is_effect_on_min()) {
        throw InvalidInput("f is not an effect on A (x)min B");
    }
    if (!omega.is_positive() || !omega.is_normalized()) {
        throw InvalidInput("omega is not a normalized state on B (x)max A");
    }
    const double tol = tol_of(a, b);
    TeleportationCertificate cert;
    cert.mu = omega_hat(omega).matrix * f_hat(f).matrix;

    const Vector& u = a.unit();
    Vector pulled = cert.mu.transpose() * u;
    std::size_t k = 0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (sign(abs(u[i]) - abs(u[k]), tol) > 0) {
            k = i;
        }
    }
    cert.constant = pulled[k] / u[k];
    cert.correction = Matrix::identity(a.dim());
    if (sign(cert.constant, tol) <= 0) {
        cert.reason = "mu annihilates the unit";
        return cert;
    }
    if (!approx_equal(pulled, cert.constant * u, tol)) {
        cert.reason = "u o mu is not proportional to u";
        return cert;
    }
    Matrix j = (Scalar(1) / cert.constant) * cert.mu;
    if (!is_order_isomorphism(LinearMap(j, a, a))) {
        cert.reason = "mu / c is not an order isomorphism";
        return cert;
    }
    cert.correction = *inverse(j, tol);
    LinearMap tau(cert.correction, a, a);
    if (!is_positive_map(tau) || !is_norm_contractive(tau) || !is_order_isomorphism(tau)) {
        cert.reason = "correction is not an allowed isomorphism";
        return cert;
    }
    cert.verdict = true;
    return cert;
}

bool verify_correction_free(const StateSpace& a, const StateSpace& b, const BipartiteEffect& f,
                            const BipartiteState& omega) {
    TeleportationCertificate cert = verify_teleportation(a, b, f, omega);
    return cert.verdict && approx_identity(cert.correction, tol_of(a, b));
}

DeterministicTeleportation construct_deterministic_teleportation(const SymmetricModel& model) {
    const StateSpace& space = model.space;
    const double tol = space.tolerance();
    const Matrix& w_hat = model.omega_hat;
    if (model.group.empty()) {
        throw InvalidInput("empty symmetry group");
    }
    if (w_hat.rows() != space.dim() || w_hat.cols() != space.dim()) {
        throw DimensionMismatch("omega_hat shape does not match the state space");
    }
    for (const auto& g : model.group) {
        auto g_inv = inverse(g, tol);
        if (!g_inv || !approx_equal(g * w_hat, w_hat * g_inv->transpose(), tol)) {
            throw InvalidInput("omega_hat is not equivariant under the group");
        }
        if (!is_order_isomorphism(LinearMap(g, space, space))) {
            throw InvalidInput("group element is not a symmetry of the state space");
        }
    }
    if (!is_order_isomorphism(LinearMap(w_hat, dual_state_space(space), space))) {
        throw InvalidInput("omega_hat is not an order isomorphism from A* to A");
    }
    auto pure = space.pure_states();
    for (const auto& p : pure) {
        bool reached = false;
        for (const auto& g : model.group) {
            reached = reached || approx_equal(g * pure.front(), p, tol);
        }
        if (!reached) {
            throw InvalidInput("group does not act transitively on the pure states");
        }
    }

    BipartiteState omega(space, space, w_hat.transpose());
    if (!omega.is_normalized()) {
        throw InvalidInput("omega_hat does not give a normalized state");
    }
    Matrix w_inv = *inverse(w_hat, tol);
    const Scalar scale = space.arithmetic() == Arithmetic::rational
                             ? Scalar::ratio(1, static_cast<long>(model.group.size()))
                             : Scalar(1.0 / static_cast<double>(model.group.size()));

    DeterministicTeleportation out{{}, omega, model.group, {}};
    Matrix total(space.dim(), space.dim());
    for (const auto& g : model.group) {
        Matrix f_hat_g = scale * (w_inv * g);
        out.effects.emplace_back(space, space, f_hat_g.transpose());
        total = total + out.effects.back().coords();
    }
    if (!approx_equal(total, Matrix::outer(space.unit(), space.unit()), tol)) {
        throw std::logic_error("outcome effects do not sum to u (x) u");
    }
    for (std::size_t i = 0; i < model.group.size(); ++i) {
        TeleportationCertificate cert = verify_teleportation(space, space, out.effects[i], omega);
        if (!cert.verdict || !approx_equal(cert.correction, *inverse(model.group[i], tol), tol)) {
            throw std::logic_error("outcome certificate failed: " + cert.reason);
        }
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

bool verify_compression_witness(const StateSpace& a1, const StateSpace& a2, const Matrix& p,
                                const std::optional<Matrix>& iota) {
    if (p.rows() != a1.dim() || p.cols() != a2.dim()) {
        throw DimensionMismatch("P must map A2* into A1");
    }
    const double tol = tol_of(a1, a2);
    Matrix inclusion;
    if (iota) {
        if (iota->rows() != a2.dim() || iota->cols() != a1.dim()) {
            throw DimensionMismatch("iota must map A1 into A2*");
        }
        inclusion = *iota;
    } else if (auto inv = p.rows() == p.cols() ? inverse(p, tol) : std::nullopt) {
        inclusion = *inv;
    } else {
        return false;
    }
    StateSpace dual2 = dual_state_space(a2);
    if (!is_positive_map(LinearMap(p, dual2, a1)) || !is_positive_map(LinearMap(inclusion, a1, dual2))) {
        return false;
    }
    if (!approx_identity(p * inclusion, tol)) {
        return false;
    }
    Matrix q = inclusion * p;
    return approx_equal(q * q, q, tol);
}

}  // namespace gptkit
