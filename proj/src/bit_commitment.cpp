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

#include <algorithm>
#include <cmath>
#include <functional>

#include "gptkit/errors.hpp"
#include "gptkit/lp.hpp"
#include "gptkit/protocols.hpp"

namespace gptkit {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

double clamp_probability(const Scalar& p) {
    double v = p.to_double();
    if (v >= 1.0 - kDefaultTolerance) {
        return 1.0;
    }
    return v <= 0.0 ? 0.0 : v;
}

Scalar zero_like(const StateSpace& space) {
    return space.arithmetic() == Arithmetic::rational ? Scalar(0) : Scalar(0.0);
}

// Calls f on disjoint pairs (S0, S1) with |S0| + |S1| = total and min S0 < min S1.
bool for_each_split(std::size_t n, std::size_t total,
                    const std::function<bool(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>& f) {
    for (std::size_t k0 = 1; k0 < total; ++k0) {
        const std::size_t k1 = total - k0;
        std::vector<std::size_t> s0(k0), s1(k1);
        std::function<bool(std::size_t, std::size_t)> rec1;
        std::function<bool(std::size_t, std::size_t)> rec0 = [&](std::size_t start, std::size_t depth) {
            if (depth == k0) {
                return rec1(s0.front() + 1, 0);
            }
            for (std::size_t i = start; i < n; ++i) {
                s0[depth] = i;
                if (!rec0(i + 1, depth + 1)) {
                    return false;
                }
            }
            return true;
        };
        rec1 = [&](std::size_t start, std::size_t depth) {
            if (depth == k1) {
                return f(s0, s1);
            }
            for (std::size_t i = start; i < n; ++i) {
                if (std::find(s0.begin(), s0.end(), i) != s0.end()) {
                    continue;
                }
                s1[depth] = i;
                if (!rec1(i + 1, depth + 1)) {
                    return false;
                }
            }
            return true;
        };
        if (!rec0(0, 0)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::optional<Effect> exposing_effect(const StateSpace& space, const Vector& state) {
    if (!space.cone().is_polyhedral()) {
        throw UnsupportedKind("exposedness is tested against enumerated pure states");
    }
    const double tol = space.tolerance();
    const std::size_t dim = space.dim();
    std::vector<Vector> pure = space.pure_states();
    std::vector<Vector> others;
    for (const auto& p : pure) {
        if (!approx_equal(p, state, tol)) {
            others.push_back(p);
        }
    }
    // Columns: a+ (dim), a- (dim), t, upper slacks (others), lower slacks (pure).
    const std::size_t t_col = 2 * dim;
    const std::size_t upper0 = t_col + 1;
    const std::size_t lower0 = upper0 + others.size();
    const std::size_t cols = lower0 + pure.size();
    const std::size_t rows = 1 + others.size() + pure.size();
    Matrix a(rows, cols);
    Vector b(rows, Scalar(0));
    auto put_functional = [&](std::size_t row, const Vector& x) {
        for (std::size_t c = 0; c < dim; ++c) {
            a(row, c) = x[c];
            a(row, dim + c) = -x[c];
        }
    };
    put_functional(0, state);
    b[0] = 1;
    for (std::size_t i = 0; i < others.size(); ++i) {
        put_functional(1 + i, others[i]);
        a(1 + i, t_col) = 1;
        a(1 + i, upper0 + i) = 1;
        b[1 + i] = 1;
    }
    for (std::size_t i = 0; i < pure.size(); ++i) {
        const std::size_t row = 1 + others.size() + i;
        put_functional(row, pure[i]);
        a(row, lower0 + i) = -1;
    }
    Vector c(cols, Scalar(0));
    c[t_col] = -1;
    LpResult r = minimize(a, b, c, tol);
    if (r.status != LpStatus::optimal || sign(r.x[t_col], tol) <= 0) {
        return std::nullopt;
    }
    Vector effect(dim, zero_like(space));
    for (std::size_t k = 0; k < dim; ++k) {
        effect[k] = r.x[k] - r.x[dim + k];
    }
    return Effect{std::move(effect)};
}

DoubleDecomposition find_double_decomposition(const StateSpace& space, std::size_t max_pairs) {
    if (!space.cone().is_polyhedral()) {
        throw UnsupportedKind("double decompositions are searched over enumerated pure states");
    }
    const double tol = space.tolerance();
    std::vector<Vector> pure;
    std::vector<Effect> exposers;
    for (const auto& p : space.pure_states()) {
        if (auto e = exposing_effect(space, p)) {
            pure.push_back(p);
            exposers.push_back(std::move(*e));
        }
    }
    if (space.pure_states().size() <= space.dim()) {
        throw InvalidInput("the state space is a simplex; every state decomposes uniquely");
    }
    const std::size_t dim = space.dim();
    std::size_t examined = 0;
    std::optional<DoubleDecomposition> found;
    for (std::size_t total = 2; total <= pure.size() && !found; ++total) {
        for_each_split(pure.size(), total, [&](const std::vector<std::size_t>& s0, const std::vector<std::size_t>& s1) {
            if (++examined > max_pairs) {
                throw SearchCapExceeded("double decomposition search exceeded " + std::to_string(max_pairs) + " pairs");
            }
            // Σ p_i x_i - Σ q_j y_j = 0, Σ p_i = 1; normalization makes Σ q_j = 1 follow.
            const std::size_t n0 = s0.size();
            Matrix a(dim + 1, total);
            Vector b(dim + 1, Scalar(0));
            for (std::size_t r = 0; r < dim; ++r) {
                for (std::size_t i = 0; i < n0; ++i) {
                    a(r, i) = pure[s0[i]][r];
                }
                for (std::size_t j = 0; j < s1.size(); ++j) {
                    a(r, n0 + j) = -pure[s1[j]][r];
                }
            }
            for (std::size_t i = 0; i < n0; ++i) {
                a(dim, i) = 1;
            }
            b[dim] = 1;
            auto w = find_nonnegative_solution(a, b, tol);
            if (!w) {
                return true;
            }
            for (const auto& x : *w) {
                if (sign(x, tol) <= 0) {
                    return true;
                }
            }
            DoubleDecomposition dd;
            dd.omega = Vector(dim, zero_like(space));
            for (std::size_t i = 0; i < n0; ++i) {
                dd.branch0.push_back({pure[s0[i]], (*w)[i]});
                dd.distinguishers0.push_back(exposers[s0[i]]);
                dd.omega = dd.omega + (*w)[i] * pure[s0[i]];
            }
            for (std::size_t j = 0; j < s1.size(); ++j) {
                dd.branch1.push_back({pure[s1[j]], (*w)[n0 + j]});
                dd.distinguishers1.push_back(exposers[s1[j]]);
            }
            found = std::move(dd);
            return false;
        });
    }
    if (!found) {
        throw std::logic_error("no double decomposition in a non-simplicial polytope");
    }
    return *found;
}

bool validate_double_decomposition(const StateSpace& space, const DoubleDecomposition& dd) {
    const double tol = space.tolerance();
    if (dd.branch0.empty() || dd.branch1.empty() || dd.distinguishers0.size() != dd.branch0.size() ||
        dd.distinguishers1.size() != dd.branch1.size()) {
        return false;
    }
    auto pure = space.pure_states();
    for (int bit : {0, 1}) {
        Vector mix(space.dim(), zero_like(space));
        Scalar total = zero_like(space);
        const auto& branch = dd.branch(bit);
        for (std::size_t i = 0; i < branch.size(); ++i) {
            const auto& ws = branch[i];
            if (sign(ws.probability, tol) <= 0) {
                return false;
            }
            mix = mix + ws.probability * ws.state;
            total += ws.probability;
            const Vector& a = dd.distinguishers(bit)[i].functional;
            if (!is_effect(space, a) || !approx_equal(dot(a, ws.state), Scalar(1), tol)) {
                return false;
            }
            for (const auto& p : pure) {
                if (!approx_equal(p, ws.state, tol) && sign(dot(a, p) - Scalar(1), tol) >= 0) {
                    return false;
                }
            }
        }
        if (!approx_equal(mix, dd.omega, tol) || !approx_equal(total, Scalar(1), tol)) {
            return false;
        }
    }
    for (const auto& x : dd.branch0) {
        for (const auto& y : dd.branch1) {
            if (approx_equal(x.state, y.state, tol)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

bool draw_all(const std::vector<double>& probabilities, std::mt19937_64& rng, std::vector<bool>* fired) {
    bool accept = true;
    for (double p : probabilities) {
        bool fire = uniform01(rng) < p;
        if (fired) {
            fired->push_back(fire);
        }
        accept = accept && fire;
    }
    return accept;
}

}  // namespace

bool bc_verify(const DoubleDecomposition& dd, const std::vector<Vector>& committed, int reveal_bit,
               const std::vector<std::size_t>& reveal_samples, std::mt19937_64& rng, std::vector<bool>* fired) {
    if (reveal_bit != 0 && reveal_bit != 1) {
        return false;
    }
    if (reveal_samples.size() != committed.size()) {
        return false;
    }
    const auto& effects = dd.distinguishers(reveal_bit);
    std::vector<double> probabilities;
    for (std::size_t k = 0; k < committed.size(); ++k) {
        if (reveal_samples[k] >= effects.size()) {
            return false;
        }
        probabilities.push_back(clamp_probability(dot(effects[reveal_samples[k]].functional, committed[k])));
    }
    return draw_all(probabilities, rng, fired);
}

CommitmentTranscript bc_run(const StateSpace& space, const DoubleDecomposition& dd, int bit, int n,
                            std::uint64_t seed) {
    if (bit != 0 && bit != 1) {
        throw InvalidInput("commitment bit must be 0 or 1");
    }
    if (n < 1) {
        throw InvalidInput("need at least one round");
    }
    if (dd.omega.size() != space.dim()) {
        throw DimensionMismatch("decomposition does not belong to this state space");
    }
    std::mt19937_64 rng = seeded(seed, 0);
    CommitmentTranscript tr;
    tr.bit = bit;
    tr.seed = seed;
    const auto& branch = dd.branch(bit);
    for (int k = 0; k < n; ++k) {
        double u = uniform01(rng);
        std::size_t pick = branch.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < branch.size(); ++i) {
            acc += branch[i].probability.to_double();
            if (u < acc) {
                pick = i;
                break;
            }
        }
        tr.samples.push_back(pick);
        tr.committed.push_back(branch[pick].state);
    }
    tr.reveal_bit = bit;
    tr.reveal_samples = tr.samples;
    tr.accepted = bc_verify(dd, tr.committed, tr.reveal_bit, tr.reveal_samples, rng, &tr.fired);
    return tr;
}

CheatBound bc_cheat_bound(const StateSpace& space, const DoubleDecomposition& dd, int n) {
    if (n < 1) {
        throw InvalidInput("need at least one round");
    }
    const double tol = space.tolerance();
    auto pure = space.pure_states();
    const std::size_t m = pure.size();
    // Columns: λ (m), t, s0, s1.  Rows: Σλ = 1, a⁰_i(σ) - t - s0 = 0, a¹_j(σ) - t - s1 = 0.
    std::optional<CheatBound> best;
    for (std::size_t i = 0; i < dd.distinguishers0.size(); ++i) {
        for (std::size_t j = 0; j < dd.distinguishers1.size(); ++j) {
            Matrix a(3, m + 3);
            Vector b(3, Scalar(0));
            for (std::size_t k = 0; k < m; ++k) {
                a(0, k) = 1;
                a(1, k) = dot(dd.distinguishers0[i].functional, pure[k]);
                a(2, k) = dot(dd.distinguishers1[j].functional, pure[k]);
            }
            b[0] = 1;
            a(1, m) = -1;
            a(2, m) = -1;
            a(1, m + 1) = -1;
            a(2, m + 2) = -1;
            Vector c(m + 3, Scalar(0));
            c[m] = -1;
            LpResult r = minimize(a, b, c, tol);
            if (r.status != LpStatus::optimal) {
                throw SolverFailure("cheat bound LP did not reach an optimum");
            }
            Scalar value = r.x[m];
            if (!best || sign(value - best->per_round, tol) > 0) {
                CheatBound cb;
                cb.per_round = value;
                cb.sigma = Vector(space.dim(), zero_like(space));
                for (std::size_t k = 0; k < m; ++k) {
                    cb.sigma = cb.sigma + r.x[k] * pure[k];
                }
                cb.index0 = i;
                cb.index1 = j;
                best = std::move(cb);
            }
        }
    }
    if (!best) {
        throw InvalidInput("decomposition has no distinguishers");
    }
    best->n = n;
    best->overall = std::pow(best->per_round.to_double(), n);
    return *best;
}

CheatEstimate bc_simulate_cheat(const DoubleDecomposition& dd, const CheatBound& bound, int n, std::size_t runs,
                                std::uint64_t seed) {
    if (n < 1 || runs == 0) {
        throw InvalidInput("need at least one round and one run");
    }
    // Alice opens whichever bit her state supports least well: that is the binding failure rate.
    Scalar p0 = dot(dd.distinguishers0[bound.index0].functional, bound.sigma);
    Scalar p1 = dot(dd.distinguishers1[bound.index1].functional, bound.sigma);
    const int bit = sign(p1 - p0) < 0 ? 1 : 0;
    const std::size_t index = bit == 0 ? bound.index0 : bound.index1;
    const Vector& effect = (bit == 0 ? dd.distinguishers0 : dd.distinguishers1)[index].functional;
    const std::vector<double> probabilities(n, clamp_probability(dot(effect, bound.sigma)));

    CheatEstimate est;
    est.n = n;
    est.runs = runs;
    std::mt19937_64 rng = seeded(seed, static_cast<std::uint64_t>(n));
    for (std::size_t run = 0; run < runs; ++run) {
        if (draw_all(probabilities, rng, nullptr)) {
            ++est.successes;
        }
    }
    est.rate = static_cast<double>(est.successes) / static_cast<double>(runs);
    est.stderr_ = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(runs));
    return est;
}

}  // namespace gptkit
