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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gptkit/errors.hpp"
#include "gptkit/io.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/protocols.hpp"

namespace gptkit::cli {

namespace {

using nlohmann::json;

struct Globals {
    std::string arithmetic;
    double tol = kDefaultTolerance;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
};

struct Outcome {
    std::string text;
    int code = kExitAccept;
    std::string message;  // printed to stderr, if any
};

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

StateSpace load_model(const std::string& name, const Globals& g) {
    StateSpace space = [&] {
        if (name.size() > 5 && name.compare(name.size() - 5, 5, ".json") == 0) {
            std::ifstream in(name);
            if (!in) {
                throw InvalidInput("cannot read model file '" + name + "'");
            }
            return state_space_from_json(json::parse(in));
        }
        return make_model(name, g.tol);
    }();
    if (g.arithmetic == "float") {
        return with_arithmetic(space, Arithmetic::floating, g.tol);
    }
    if (g.arithmetic == "rational") {
        return with_arithmetic(space, Arithmetic::rational, g.tol);
    }
    return space;
}

Vector load_vector(const std::string& text, std::size_t expected, const char* what) {
    Vector v = parse_vector(text);
    if (v.size() != expected) {
        throw DimensionMismatch(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(expected));
    }
    return v;
}

Vector in_mode(const StateSpace& space, Vector v) { return space.arithmetic() == Arithmetic::floating ? to_float(v) : v; }

json vectors_json(const std::vector<Vector>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        out.push_back(to_json(v));
    }
    return out;
}

json observable_json(const Observable& obs) {
    json out = json::array();
    for (const auto& e : obs.effects) {
        out.push_back(to_json(e.functional));
    }
    return out;
}

json certificate_json(const TeleportationCertificate& cert) {
    return {{"verdict", cert.verdict},
            {"reason", cert.reason},
            {"constant", to_json(cert.constant)},
            {"mu", to_json(cert.mu)},
            {"correction", to_json(cert.correction)}};
}

json decomposition_json(const DoubleDecomposition& dd) {
    auto branch = [&](int bit) {
        json out = json::array();
        for (std::size_t i = 0; i < dd.branch(bit).size(); ++i) {
            out.push_back({{"state", to_json(dd.branch(bit)[i].state)},
                           {"probability", to_json(dd.branch(bit)[i].probability)},
                           {"distinguisher", to_json(dd.distinguishers(bit)[i].functional)}});
        }
        return out;
    };
    return {{"omega", to_json(dd.omega)}, {"branch0", branch(0)}, {"branch1", branch(1)}, {"total_size", dd.total_size()}};
}

Outcome json_outcome(const json& report, bool verdict = true) {
    return {report.dump(2) + "\n", verdict ? kExitAccept : kExitReject, {}};
}

void require_json(const Globals& g, const char* command) {
    if (g.format == "csv") {
        throw InvalidInput(std::string("csv output is not available for '") + command + "'; use --format json");
    }
}

std::string error_category(const std::exception& e) {
    if (dynamic_cast<const DimensionCapExceeded*>(&e)) {
        return "dimension cap exceeded";
    }
    if (dynamic_cast<const SearchCapExceeded*>(&e)) {
        return "search cap exceeded";
    }
    if (dynamic_cast<const SolverFailure*>(&e)) {
        return "solver failure";
    }
    if (dynamic_cast<const DimensionMismatch*>(&e)) {
        return "dimension mismatch";
    }
    if (dynamic_cast<const DegenerateCone*>(&e)) {
        return "degenerate cone";
    }
    if (dynamic_cast<const UnsupportedKind*>(&e)) {
        return "unsupported cone kind";
    }
    if (dynamic_cast<const InvalidInput*>(&e)) {
        return "invalid input";
    }
    if (dynamic_cast<const json::exception*>(&e)) {
        return "parse error";
    }
    return "internal error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-dimensional general probabilistic theories: cones, composites and protocols", "gpt-kit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--arithmetic", g.arithmetic, "Force rational or float arithmetic")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--tol", g.tol, "Absolute tolerance for float mode")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "PRNG seed");
    app.add_option("--out", g.out, "Write the report to this file");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    std::function<Outcome()> action;

    // tensor
    auto* tensor = app.add_subcommand("tensor", "Minimal or maximal tensor product of two models");
    bool use_min = false, use_max = false, check_equals_min = false;
    std::string model_a, model_b;
    auto* min_flag = tensor->add_flag("--min", use_min, "Minimal tensor product");
    tensor->add_flag("--max", use_max, "Maximal tensor product")->excludes(min_flag);
    tensor->add_flag("--check-equals-min", check_equals_min, "Exit 0 iff the min and max products coincide");
    tensor->add_option("A", model_a, "First model")->required();
    tensor->add_option("B", model_b, "Second model")->required();
    tensor->callback([&] {
        action = [&] {
            require_json(g, "tensor");
            if (!use_min && !use_max) {
                throw InvalidInput("tensor needs --min or --max");
            }
            StateSpace a = load_model(model_a, g);
            StateSpace b = load_model(model_b, g);
            CompositeSpace c = use_min ? min_tensor(a, b) : max_tensor(a, b);
            json report{{"command", "tensor"},
                        {"kind", use_min ? "min" : "max"},
                        {"a", to_json(a)},
                        {"b", to_json(b)},
                        {"composite", to_json(c.space)}};
            bool verdict = true;
            if (check_equals_min) {
                verdict = min_equals_max(a, b);
                report["equals_min"] = verdict;
            }
            return json_outcome(report, verdict);
        };
    });

    // marginal / conditional
    std::string bip_a, bip_b, state_text, effect_text, side = "b";
    auto add_bipartite = [&](CLI::App* sub) {
        sub->add_option("--a", bip_a, "Model of the first factor")->required();
        sub->add_option("--b", bip_b, "Model of the second factor")->required();
        sub->add_option("--state", state_text, "Bipartite state, row-major, comma-separated")->required();
    };
    auto load_bipartite = [&]() {
        StateSpace a = load_model(bip_a, g);
        StateSpace b = load_model(bip_b, g);
        Vector w = in_mode(a, load_vector(state_text, a.dim() * b.dim(), "state"));
        BipartiteState omega(a, b, Matrix::reshape(w, a.dim(), b.dim()));
        if (!omega.is_positive() || !omega.is_normalized()) {
            throw InvalidInput("state is not a normalized positive bipartite state");
        }
        return omega;
    };
    auto* marginal_cmd = app.add_subcommand("marginal", "Marginal of a bipartite state");
    add_bipartite(marginal_cmd);
    marginal_cmd->add_option("--side", side, "Factor to keep")->check(CLI::IsMember({"a", "b"}));
    marginal_cmd->callback([&] {
        action = [&] {
            require_json(g, "marginal");
            BipartiteState omega = load_bipartite();
            Vector m = marginal(omega, side == "a" ? Side::a : Side::b);
            return json_outcome({{"command", "marginal"},
                                 {"a", to_json(omega.a())},
                                 {"b", to_json(omega.b())},
                                 {"state", to_json(omega.coords())},
                                 {"side", side},
                                 {"marginal", to_json(m)}});
        };
    });
    auto* conditional_cmd = app.add_subcommand("conditional", "State of B conditioned on an effect on A");
    add_bipartite(conditional_cmd);
    conditional_cmd->add_option("--effect", effect_text, "Effect on the first factor")->required();
    conditional_cmd->callback([&] {
        action = [&] {
            require_json(g, "conditional");
            BipartiteState omega = load_bipartite();
            Effect e{in_mode(omega.a(), load_vector(effect_text, omega.a().dim(), "effect"))};
            if (!is_effect(omega.a(), e.functional)) {
                throw InvalidInput("functional is not an effect on the first factor");
            }
            Scalar p = dot(e.functional, marginal(omega, Side::a));
            return json_outcome({{"command", "conditional"},
                                 {"a", to_json(omega.a())},
                                 {"b", to_json(omega.b())},
                                 {"state", to_json(omega.coords())},
                                 {"effect", to_json(e.functional)},
                                 {"probability", to_json(p)},
                                 {"conditional", to_json(conditional(omega, e))}});
        };
    });

    // teleport
    auto* teleport = app.add_subcommand("teleport", "Teleportation protocols");
    teleport->require_subcommand(1);
    std::string tp_model, tp_group, tp_effect, tp_state;
    std::size_t tp_outcome = 0;
    auto* tp_verify = teleport->add_subcommand("verify", "Check a (effect, state) pair");
    tp_verify->add_option("--model", tp_model, "Model of the teleported system")->required();
    tp_verify->add_option("--effect", tp_effect, "Effect on A(x)A, row-major");
    tp_verify->add_option("--state", tp_state, "State on A(x)A, row-major");
    tp_verify->add_option("--group", tp_group, "Verify an outcome of the constructed protocol instead");
    tp_verify->add_option("--outcome", tp_outcome, "Outcome index for --group");
    tp_verify->callback([&] {
        action = [&] {
            require_json(g, "teleport verify");
            StateSpace a = load_model(tp_model, g);
            const std::size_t d = a.dim();
            std::optional<BipartiteEffect> f;
            std::optional<BipartiteState> omega;
            if (!tp_group.empty()) {
                if (!tp_effect.empty() || !tp_state.empty()) {
                    throw InvalidInput("use either --group/--outcome or --effect/--state");
                }
                SymmetricModel model = make_symmetric_model(tp_model, tp_group);
                auto proto = construct_deterministic_teleportation(model);
                if (tp_outcome >= proto.effects.size()) {
                    throw InvalidInput("outcome index out of range");
                }
                a = model.space;
                f = proto.effects[tp_outcome];
                omega = proto.omega;
            } else {
                if (tp_effect.empty() || tp_state.empty()) {
                    throw InvalidInput("teleport verify needs --effect and --state (or --group)");
                }
                f = BipartiteEffect(a, a, Matrix::reshape(in_mode(a, load_vector(tp_effect, d * d, "effect")), d, d));
                omega = BipartiteState(a, a, Matrix::reshape(in_mode(a, load_vector(tp_state, d * d, "state")), d, d));
            }
            TeleportationCertificate cert = verify_teleportation(a, a, *f, *omega);
            json report{{"command", "teleport verify"},
                        {"model", to_json(a)},
                        {"effect", to_json(f->coords())},
                        {"state", to_json(omega->coords())},
                        {"certificate", certificate_json(cert)},
                        {"correction_free", verify_correction_free(a, a, *f, *omega)}};
            if (cert.verdict) {
                report["self_duality_witness"] = verify_self_duality_witness(a, f_hat(*f).matrix);
            }
            return json_outcome(report, cert.verdict);
        };
    });
    auto* tp_construct = teleport->add_subcommand("construct", "Deterministic protocol from a symmetry group");
    tp_construct->add_option("--model", tp_model, "Model")->required();
    tp_construct->add_option("--group", tp_group, "Group, e.g. z4")->required();
    tp_construct->callback([&] {
        action = [&] {
            require_json(g, "teleport construct");
            SymmetricModel model = make_symmetric_model(tp_model, tp_group);
            if (!g.arithmetic.empty()) {
                Arithmetic mode = g.arithmetic == "float" ? Arithmetic::floating : Arithmetic::rational;
                model.space = with_arithmetic(model.space, mode, g.tol);
                if (mode == Arithmetic::floating) {
                    model.omega_hat = to_float(model.omega_hat);
                    for (auto& m : model.group) {
                        m = to_float(m);
                    }
                }
            }
            auto proto = construct_deterministic_teleportation(model);
            json outcomes = json::array();
            for (std::size_t i = 0; i < proto.effects.size(); ++i) {
                outcomes.push_back({{"group_element", to_json(proto.group[i])},
                                    {"effect", to_json(proto.effects[i].coords())},
                                    {"certificate", certificate_json(proto.certificates[i])}});
            }
            return json_outcome({{"command", "teleport construct"},
                                 {"model", to_json(model.space)},
                                 {"group", tp_group},
                                 {"omega_hat", to_json(model.omega_hat)},
                                 {"state", to_json(proto.omega.coords())},
                                 {"outcomes", outcomes},
                                 {"allowed_maps", "positive norm-contractive maps; group elements always allowed"}});
        };
    });

    // clone / broadcast
    std::string cb_model;
    std::vector<std::string> cb_states;
    std::size_t max_candidates = 1000000;
    auto load_states = [&](const StateSpace& space) {
        std::vector<Vector> states;
        for (const auto& s : cb_states) {
            states.push_back(in_mode(space, load_vector(s, space.dim(), "state")));
        }
        return states;
    };
    auto* clone = app.add_subcommand("clone", "Cloning");
    clone->require_subcommand(1);
    auto* clone_check = clone->add_subcommand("check", "Decide whether a set of states can be cloned");
    clone_check->add_option("--model", cb_model, "Model")->required();
    clone_check->add_option("--state", cb_states, "State (repeat for each)")->required();
    clone_check->callback([&] {
        action = [&] {
            require_json(g, "clone check");
            StateSpace space = load_model(cb_model, g);
            auto states = load_states(space);
            auto obs = one_shot_distinguishing_observable(space, states);
            json report{{"command", "clone check"},
                        {"model", to_json(space)},
                        {"states", vectors_json(states)},
                        {"clonable", obs.has_value()}};
            if (obs) {
                report["observable"] = observable_json(*obs);
                report["cloner"] = to_json(build_cloner(space, states, *obs).matrix);
            }
            return json_outcome(report, obs.has_value());
        };
    });
    auto* broadcast = app.add_subcommand("broadcast", "Broadcasting");
    broadcast->require_subcommand(1);
    auto* broadcast_check = broadcast->add_subcommand("check", "Search for a distinguishable simplex witness");
    broadcast_check->add_option("--model", cb_model, "Model")->required();
    broadcast_check->add_option("--state", cb_states, "State (repeat for each)")->required();
    broadcast_check->add_option("--max-candidates", max_candidates, "Search cap")->check(CLI::PositiveNumber);
    broadcast_check->callback([&] {
        action = [&] {
            require_json(g, "broadcast check");
            StateSpace space = load_model(cb_model, g);
            auto states = load_states(space);
            BroadcastOptions options;
            options.max_candidates = max_candidates;
            BroadcastResult r = is_broadcastable(space, states, options);
            const char* verdict = r.verdict == BroadcastVerdict::broadcastable       ? "broadcastable"
                                  : r.verdict == BroadcastVerdict::not_broadcastable ? "not_broadcastable"
                                                                                     : "inconclusive";
            json report{{"command", "broadcast check"},
                        {"model", to_json(space)},
                        {"states", vectors_json(states)},
                        {"verdict", verdict},
                        {"candidates_examined", r.candidates_examined}};
            if (r.verdict == BroadcastVerdict::broadcastable) {
                report["simplex"] = vectors_json(r.simplex);
                report["observable"] = observable_json(*r.distinguisher);
            }
            Outcome o = json_outcome(report, r.verdict == BroadcastVerdict::broadcastable);
            if (r.verdict == BroadcastVerdict::inconclusive) {
                o.code = kExitError;
                o.message = "search cap exceeded: no verdict after " + std::to_string(r.candidates_examined) +
                            " candidate sets";
            }
            return o;
        };
    });

    // disturb
    std::string ds_model;
    auto* disturb = app.add_subcommand("disturb", "Nondisturbing maps");
    disturb->require_subcommand(1);
    auto* disturb_basis = disturb->add_subcommand("basis", "Summand projections spanning the nondisturbing maps");
    disturb_basis->add_option("--model", ds_model, "Model")->required();
    disturb_basis->callback([&] {
        action = [&] {
            require_json(g, "disturb basis");
            StateSpace space = load_model(ds_model, g);
            json maps = json::array();
            for (const auto& m : nondisturbing_basis(space)) {
                maps.push_back(to_json(m.matrix));
            }
            return json_outcome({{"command", "disturb basis"},
                                 {"model", to_json(space)},
                                 {"summands", maps.size()},
                                 {"basis", maps}});
        };
    });

    // bitcommit
    std::string bc_model;
    int bc_bit = 0;
    int bc_n = 1;
    bool bc_tamper = false;
    std::size_t bc_runs = 20000;
    auto* bitcommit = app.add_subcommand("bitcommit", "Bit commitment from a double decomposition");
    bitcommit->require_subcommand(1);
    auto* bc_decompose = bitcommit->add_subcommand("decompose", "Find a double decomposition");
    bc_decompose->add_option("--model", bc_model, "Model")->required();
    bc_decompose->callback([&] {
        action = [&] {
            require_json(g, "bitcommit decompose");
            StateSpace space = load_model(bc_model, g);
            DoubleDecomposition dd = find_double_decomposition(space);
            return json_outcome({{"command", "bitcommit decompose"},
                                 {"model", to_json(space)},
                                 {"decomposition", decomposition_json(dd)}});
        };
    });
    auto* bc_run_cmd = bitcommit->add_subcommand("run", "Simulate an honest (or tampered) commitment");
    bc_run_cmd->add_option("--model", bc_model, "Model")->required();
    bc_run_cmd->add_option("--bit", bc_bit, "Committed bit")->check(CLI::IsMember({0, 1}));
    bc_run_cmd->add_option("--n", bc_n, "Number of samples")->check(CLI::PositiveNumber);
    bc_run_cmd->add_flag("--tamper", bc_tamper, "Reveal a wrong first sample");
    bc_run_cmd->callback([&] {
        action = [&] {
            require_json(g, "bitcommit run");
            StateSpace space = load_model(bc_model, g);
            DoubleDecomposition dd = find_double_decomposition(space);
            CommitmentTranscript tr = bc_run(space, dd, bc_bit, bc_n, g.seed);
            if (bc_tamper) {
                const std::size_t size = dd.branch(bc_bit).size();
                tr.reveal_samples[0] = (tr.reveal_samples[0] + 1) % size;
                tr.fired.clear();
                std::mt19937_64 rng(g.seed);
                tr.accepted = bc_verify(dd, tr.committed, tr.reveal_bit, tr.reveal_samples, rng, &tr.fired);
            }
            json fired = json::array();
            for (bool b : tr.fired) {
                fired.push_back(b);
            }
            json report{{"command", "bitcommit run"},
                        {"model", to_json(space)},
                        {"decomposition", decomposition_json(dd)},
                        {"seed", tr.seed},
                        {"bit", tr.bit},
                        {"n", bc_n},
                        {"samples", tr.samples},
                        {"committed", vectors_json(tr.committed)},
                        {"reveal", {{"bit", tr.reveal_bit}, {"samples", tr.reveal_samples}}},
                        {"tampered", bc_tamper},
                        {"fired", fired},
                        {"verdict", tr.accepted ? "accept" : "reject"}};
            return json_outcome(report, tr.accepted);
        };
    });
    auto* bc_bound = bitcommit->add_subcommand("bound", "Product-cheat bound and Monte Carlo decay curve");
    bc_bound->add_option("--model", bc_model, "Model")->required();
    bc_bound->add_option("--n", bc_n, "Largest number of rounds")->check(CLI::PositiveNumber);
    bc_bound->add_option("--runs", bc_runs, "Monte Carlo runs per n")->check(CLI::PositiveNumber);
    bc_bound->callback([&] {
        action = [&] {
            StateSpace space = load_model(bc_model, g);
            DoubleDecomposition dd = find_double_decomposition(space);
            CheatBound cb = bc_cheat_bound(space, dd, bc_n);
            std::ostringstream csv;
            csv << "n,analytic_bound,empirical_rate,stderr\n";
            json rows = json::array();
            for (int n = 1; n <= bc_n; ++n) {
                CheatEstimate est = bc_simulate_cheat(dd, cb, n, bc_runs, g.seed);
                double bound = std::pow(cb.per_round.to_double(), n);
                csv << n << ',' << format_double(bound) << ',' << format_double(est.rate) << ','
                    << format_double(est.stderr_) << '\n';
                rows.push_back({{"n", n}, {"analytic_bound", bound}, {"empirical_rate", est.rate}, {"stderr", est.stderr_}});
            }
            if (g.format == "json") {
                return json_outcome({{"command", "bitcommit bound"},
                                     {"model", to_json(space)},
                                     {"decomposition", decomposition_json(dd)},
                                     {"per_round", to_json(cb.per_round)},
                                     {"sigma", to_json(cb.sigma)},
                                     {"seed", g.seed},
                                     {"runs", bc_runs},
                                     {"rows", rows}});
            }
            return Outcome{csv.str(), kExitAccept, {}};
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitAccept : kExitError;
    }
    if (!action) {
        err << "error: no command given\n";
        return kExitError;
    }
    try {
        Outcome o = action();
        if (!g.out.empty()) {
            std::ofstream file(g.out, std::ios::binary);
            if (!file) {
                throw InvalidInput("cannot write '" + g.out + "'");
            }
            file << o.text;
        } else {
            out << o.text;
        }
        if (!o.message.empty()) {
            err << "error: " << o.message << "\n";
        }
        return o.code;
    } catch (const std::exception& e) {
        err << "error: " << error_category(e) << ": " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace gptkit::cli
