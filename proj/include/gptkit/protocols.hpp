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

#ifndef GPTKIT_PROTOCOLS_HPP
#define GPTKIT_PROTOCOLS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gptkit/composites.hpp"
#include "gptkit/models.hpp"

namespace gptkit {

// Nondisturbance.

/// One projection per irreducible summand: identity on its span, zero on the others.
std::vector<LinearMap> nondisturbing_basis(const StateSpace& space);
/// True iff T is positive and maps every extreme ray g to c·g with c >= 0.
bool is_nondisturbing(const StateSpace& space, const Matrix& t);

// Cloning and broadcasting.

bool is_clonable(const StateSpace& space, const std::vector<Vector>& states);

/// M = Σ_i (ω_i ⊗ ω_i) a_i(·) as a map A → A ⊗_min A. Effects beyond |S| prepare ω_0 ⊗ ω_0.
LinearMap build_cloner(const StateSpace& space, const std::vector<Vector>& states, const Observable& observable);

enum class BroadcastVerdict { broadcastable, not_broadcastable, inconclusive };

struct BroadcastResult {
    BroadcastVerdict verdict = BroadcastVerdict::inconclusive;
    std::vector<Vector> simplex;       ///< vertices of the witness when broadcastable
    std::optional<Observable> distinguisher;
    std::size_t candidates_examined = 0;
};

struct BroadcastOptions {
    std::size_t max_subset_size = 0;  ///< 0 means dim + 1
    std::size_t max_candidates = 1000000;
};

/**
 * Looks for an affinely independent, one-shot distinguishable vertex set drawn
 * from the pure states and the input states whose hull contains every input.
 * A negative verdict is exhaustive over that candidate family only.
 */
BroadcastResult is_broadcastable(const StateSpace& space, const std::vector<Vector>& states,
                                 const BroadcastOptions& options = {});

// Bit commitment.

/// Effect equal to 1 on `state` and maximally below 1 on every other pure state, if one exists.
std::optional<Effect> exposing_effect(const StateSpace& space, const Vector& state);

struct WeightedState {
    Vector state;
    Scalar probability;
};

struct DoubleDecomposition {
    Vector omega;
    std::vector<WeightedState> branch0;
    std::vector<WeightedState> branch1;
    std::vector<Effect> distinguishers0;
    std::vector<Effect> distinguishers1;

    const std::vector<WeightedState>& branch(int bit) const { return bit == 0 ? branch0 : branch1; }
    const std::vector<Effect>& distinguishers(int bit) const { return bit == 0 ? distinguishers0 : distinguishers1; }
    std::size_t total_size() const { return branch0.size() + branch1.size(); }
};

/// Smallest disjoint pair of pure-state sets whose hulls meet. Throws InvalidInput on a simplex.
DoubleDecomposition find_double_decomposition(const StateSpace& space, std::size_t max_pairs = 1000000);

/// Both mixtures equal omega, the branch sets are disjoint and each distinguisher exposes its state.
bool validate_double_decomposition(const StateSpace& space, const DoubleDecomposition& dd);

struct CommitmentTranscript {
    int bit = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> samples;
    std::vector<Vector> committed;
    int reveal_bit = 0;
    std::vector<std::size_t> reveal_samples;
    std::vector<bool> fired;
    bool accepted = false;
};

/// Bob's check: measures each committed system with the named distinguisher; accepts iff all fire.
bool bc_verify(const DoubleDecomposition& dd, const std::vector<Vector>& committed, int reveal_bit,
               const std::vector<std::size_t>& reveal_samples, std::mt19937_64& rng, std::vector<bool>* fired = nullptr);

/// Honest commit, reveal and verification.
CommitmentTranscript bc_run(const StateSpace& space, const DoubleDecomposition& dd, int bit, int n, std::uint64_t seed);

struct CheatBound {
    Scalar per_round;           ///< c = max_σ min(max_i a⁰_i(σ), max_j a¹_j(σ))
    Vector sigma;               ///< a maximizing state
    std::size_t index0 = 0;     ///< maximizing branch-0 distinguisher
    std::size_t index1 = 0;     ///< maximizing branch-1 distinguisher
    int n = 1;
    double overall = 1.0;       ///< c^n
};

/// Optimal product-state cheat against `dd`, exact in rational mode.
CheatBound bc_cheat_bound(const StateSpace& space, const DoubleDecomposition& dd, int n);

struct CheatEstimate {
    int n = 1;
    std::size_t runs = 0;
    std::size_t successes = 0;
    double rate = 0.0;
    double stderr_ = 0.0;
};

/// Monte Carlo success rate of the product cheat from `bound` over n rounds.
CheatEstimate bc_simulate_cheat(const DoubleDecomposition& dd, const CheatBound& bound, int n, std::size_t runs,
                                std::uint64_t seed);

// Teleportation.

struct TeleportationCertificate {
    Matrix mu;
    Scalar constant;
    Matrix correction;
    bool verdict = false;
    std::string reason;
};

/// f on A ⊗ B, ω on B ⊗ A; μ = ω̂ ∘ f̂ must equal c·J with J an order isomorphism and u∘μ = c·u.
TeleportationCertificate verify_teleportation(const StateSpace& a, const StateSpace& b, const BipartiteEffect& f,
                                              const BipartiteState& omega);

bool verify_correction_free(const StateSpace& a, const StateSpace& b, const BipartiteEffect& f,
                            const BipartiteState& omega);

struct DeterministicTeleportation {
    std::vector<BipartiteEffect> effects;  ///< f_g, one per group element
    BipartiteState omega;
    std::vector<Matrix> group;
    std::vector<TeleportationCertificate> certificates;
};

/// Builds f_g with f̂_g = ω̂⁻¹ g / |G|; every certificate is checked to carry the correction g⁻¹.
DeterministicTeleportation construct_deterministic_teleportation(const SymmetricModel& model);

/// P maps A2* to A1, iota maps A1 into A2*. Without iota, a square invertible P uses P⁻¹.
bool verify_compression_witness(const StateSpace& a1, const StateSpace& a2, const Matrix& p,
                                const std::optional<Matrix>& iota = std::nullopt);

}  // namespace gptkit

#endif  // GPTKIT_PROTOCOLS_HPP
