// Copyright 2026 The threebox Authors
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

// threebox: command-line front end.
//
// Exit status: 0 on success, 1 when a scenario claim fails, 2 on usage or
// validation errors.

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "threebox.hpp"

namespace {

using namespace threebox;

constexpr int kOk = 0;
constexpr int kClaimFailed = 1;
constexpr int kUsage = 2;

enum class Format { Text, Json, Csv };

struct FormatFlags {
    bool json = false;
    bool csv = false;

    void attach(CLI::App* app) {
        auto* j = app->add_flag("--json", json, "Emit JSON");
        app->add_flag("--csv", csv, "Emit CSV")->excludes(j);
    }
    Format format() const { return json ? Format::Json : csv ? Format::Csv : Format::Text; }
};

/// Splits "N:rest" into an explicit ordinal and the remainder.
std::pair<std::optional<std::size_t>, std::string> split_ordinal(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return {std::nullopt, text};
    std::string head = text.substr(0, colon);
    if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::ParseError, "bad ordinal in '" + text + "'");
    return {std::stoul(head), text.substr(colon + 1)};
}

struct ExperimentFlags {
    std::string deck_path;
    std::string experiment_path;
    std::string prepare;
    std::vector<std::string> observe;
    std::string postselect;

    void attach(CLI::App* app) {
        auto* deck = app->add_option("--deck", deck_path, "Deck file")->check(CLI::ExistingFile);
        auto* exp = app->add_option("--experiment", experiment_path, "Experiment file (deck plus directives)")
                        ->check(CLI::ExistingFile)
                        ->excludes(deck);
        app->add_option("--prepare", prepare, "Preparation, e.g. Face=Q or Suit=~S")->excludes(exp);
        app->add_option("--observe", observe, "Manifestation in order, e.g. Suit?S or Face (repeatable)")
            ->excludes(exp);
        app->add_option("--postselect", postselect, "Final filter, e.g. Face=K or 2:Face=K")->excludes(exp);
    }

    ExperimentSpec build() const {
        if (!experiment_path.empty()) {
            std::ifstream in(experiment_path);
            std::stringstream buf;
            buf << in.rdbuf();
            return parse_experiment(buf.str());
        }
        if (deck_path.empty()) throw Error(ErrorCode::InvalidArguments, "--deck or --experiment is required");
        if (prepare.empty()) throw Error(ErrorCode::InvalidArguments, "--prepare is required");
        ExperimentSpec spec{load_deck(deck_path), {}, {}, std::nullopt};
        const Schema& s = spec.deck.schema;
        spec.preparation = parse_proposition(s, prepare);
        for (const auto& m : observe) spec.manifestations.push_back(parse_manifestation(s, m));
        if (!postselect.empty()) {
            auto [ordinal, text] = split_ordinal(postselect);
            Outcome o = parse_proposition(s, text);
            if (!ordinal) ordinal = latest_manifestation_of(spec.manifestations, o.variable());
            if (!ordinal) throw Error(ErrorCode::InvalidArguments, "--postselect names a variable never observed");
            spec.postselection = Postselection{*ordinal, o};
        }
        validate(spec);
        return spec;
    }
};

/// Resolves "--query [N:]Var=Val" to (ordinal, outcome). Without an explicit
/// ordinal, the latest manifestation of that variable before the
/// postselection (or anywhere, if there is none).
std::pair<std::size_t, Outcome> resolve_query(const ExperimentSpec& spec, const std::string& query) {
    auto [ordinal, text] = split_ordinal(query);
    Outcome o = parse_proposition(spec.deck.schema, text);
    if (!ordinal) {
        std::size_t limit = spec.postselection ? spec.postselection->ordinal - 1 : spec.manifestations.size();
        ordinal = latest_manifestation_of(spec.manifestations, o.variable(), limit);
    }
    if (!ordinal || *ordinal == 0 || *ordinal > spec.manifestations.size())
        throw Error(ErrorCode::InvalidArguments, "--query '" + query + "' matches no manifestation");
    return {*ordinal, o};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) out.push_back(item);
    return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
    return out;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int run_validate(const std::string& path, Format fmt) {
    Deck d = load_deck(path);
    const Schema& s = d.schema;
    if (fmt == Format::Json) {
        nlohmann::json joint = nlohmann::json::object();
        for (std::size_t f = 0; f < d.values_per_variable(); ++f)
            for (std::size_t k = 0; k < d.values_per_variable(); ++k)
                joint[s.labels[0][f] + s.labels[1][k]] =
                    d.joint_count({Variable::First, f}, {Variable::Second, k});
        print_json({{"valid", true},
                    {"variables", s.names},
                    {"values", s.labels},
                    {"V", d.values_per_variable()},
                    {"N", d.copies_per_value},
                    {"cards", format_cards(s, d.cards)},
                    {"joint_counts", joint}});
    } else {
        std::cout << "valid deck: " << format_cards(s, d.cards) << '\n'
                  << "V = " << d.values_per_variable() << ", N = " << d.copies_per_value << '\n';
    }
    return kOk;
}

int run_exact(const ExperimentSpec& spec, const std::string& query, Format fmt) {
    const Schema& s = spec.deck.schema;
    const BranchTree tree = enumerate(spec);
    if (!query.empty()) {
        auto [ordinal, o] = resolve_query(spec, query);
        Rational p = spec.postselection && ordinal < spec.postselection->ordinal
                         ? retrodict_exact(spec, ordinal, o)
                         : tree.probability_of(Pattern::at(ordinal, o));
        if (fmt == Format::Json) {
            nlohmann::json j = experiment_json(spec);
            j["query"] = {{"ordinal", ordinal}, {"outcome", format_proposition(s, o)}};
            j["probability"] = to_string(p);
            print_json(j);
        } else {
            std::cout << to_string(p) << '\n';
        }
        return kOk;
    }
    if (fmt == Format::Json) {
        print_json(to_json(spec, tree));
    } else if (fmt == Format::Csv) {
        std::cout << "outcomes,probability\n";
        for (auto i : tree.leaves()) {
            auto seq = format_sequence(s, tree.nodes()[i].outcomes);
            std::string joined;
            for (const auto& o : seq) joined += (joined.empty() ? "" : " ") + o;
            std::cout << joined << ',' << to_string(tree.nodes()[i].probability) << '\n';
        }
    } else {
        for (auto i : tree.leaves()) {
            const auto& n = tree.nodes()[i];
            std::string joined;
            for (const auto& o : format_sequence(s, n.outcomes)) joined += (joined.empty() ? "" : " ") + o;
            std::cout << (joined.empty() ? "(no events)" : joined) << "  " << to_string(n.probability) << "  "
                      << format_partition(s, n.state) << '\n';
        }
    }
    return kOk;
}

int run_simulate(const ExperimentSpec& spec, std::uint64_t trials, std::uint64_t seed, const std::string& query,
                 Format fmt) {
    const Schema& s = spec.deck.schema;
    const FrequencyTable table = simulate(RunConfig{spec, trials, seed});
    nlohmann::json j = to_json(spec, table, seed);
    std::optional<Estimate> q;
    if (!query.empty()) {
        auto [ordinal, o] = resolve_query(spec, query);
        if (spec.postselection && ordinal < spec.postselection->ordinal)
            q = estimate_retrodiction(table, ordinal, o).estimate;
        else
            q = proportion(table.count(Pattern::at(ordinal, o)), table.trials);
        j["query"] = {{"ordinal", ordinal},
                      {"outcome", format_proposition(s, o)},
                      {"estimate", round12(q->value)},
                      {"standard_error", round12(q->standard_error)}};
    }
    if (fmt == Format::Json) {
        print_json(j);
    } else if (fmt == Format::Csv) {
        std::cout << "outcomes,count,accepted,estimate,standard_error\n";
        for (const auto& row : j["sequences"]) {
            std::string joined;
            for (const auto& o : row["outcomes"]) joined += (joined.empty() ? "" : " ") + o.get<std::string>();
            std::cout << joined << ',' << row["count"].get<std::uint64_t>() << ','
                      << (row["accepted"].get<bool>() ? "true" : "false") << ','
                      << format_double(row["estimate"].get<double>()) << ','
                      << format_double(row["standard_error"].get<double>()) << '\n';
        }
    } else {
        std::cout << "trials " << table.trials << ", seed " << seed << ", rng " << CounterRng::kVersion << '\n';
        for (const auto& [seq, k] : table.counts) {
            std::string joined;
            for (const auto& o : format_sequence(s, seq)) joined += (joined.empty() ? "" : " ") + o;
            Estimate e = proportion(k, table.trials);
            std::cout << (joined.empty() ? "(no events)" : joined) << "  " << k << "  "
                      << format_double(e.value) << " +/- " << format_double(e.standard_error)
                      << (table.is_accepted(seq) ? "" : "  (rejected)") << '\n';
        }
        if (spec.postselection)
            std::cout << "accepted " << table.accepted << " (" << format_double(table.acceptance_rate()) << ")\n";
        if (q) std::cout << "query " << query << ": " << format_double(q->value) << " +/- "
                         << format_double(q->standard_error) << '\n';
    }
    return kOk;
}

int emit_reports(const std::vector<ScenarioReport>& reports, Format fmt) {
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    if (fmt == Format::Json) {
        if (reports.size() == 1) {
            print_json(to_json(reports.front()));
        } else {
            nlohmann::json all = nlohmann::json::array();
            for (const auto& r : reports) all.push_back(to_json(r));
            print_json(all);
        }
    } else if (fmt == Format::Csv) {
        std::cout << to_csv(reports);
    } else {
        for (const auto& r : reports) std::cout << to_text(r);
    }
    return ok ? kOk : kClaimFailed;
}

void print_value(const std::string& name, double value, Format fmt) {
    if (fmt == Format::Json)
        print_json({{name, round12(value)}});
    else
        std::cout << format_double(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical and quantum three-box retrodiction toolkit"};
    app.require_subcommand(1);

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a deck file");
    std::string validate_path;
    FormatFlags validate_fmt;
    validate_cmd->add_option("--deck", validate_path, "Deck file")->required()->check(CLI::ExistingFile);
    validate_fmt.attach(validate_cmd);

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "Exact enumeration of an experiment");
    ExperimentFlags exact_exp;
    std::string exact_query;
    FormatFlags exact_fmt;
    exact_exp.attach(exact_cmd);
    exact_cmd->add_option("--query", exact_query, "Outcome to evaluate, e.g. Suit=S or 1:Suit=S");
    exact_fmt.attach(exact_cmd);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo run of an experiment");
    ExperimentFlags sim_exp;
    std::string sim_query;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    FormatFlags sim_fmt;
    sim_exp.attach(sim_cmd);
    sim_cmd->add_option("--query", sim_query, "Outcome to estimate");
    sim_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "64-bit seed")->required();
    sim_fmt.attach(sim_cmd);

    // formula
    auto* formula_cmd = app.add_subcommand("formula", "Evaluate a retrodiction or closed-form formula");
    formula_cmd->require_subcommand(1);
    auto* partial_cmd = formula_cmd->add_subcommand("partial", "L*pi / (L*pi + L~*pi~)");
    std::string partial_inputs;
    partial_cmd->add_option("--inputs", partial_inputs, "likelihood,prior,likelihood~,prior~ as rationals")
        ->required();
    auto* complete_cmd = formula_cmd->add_subcommand("complete", "L_j*pi_j / sum_t L_t*pi_t");
    std::string complete_l, complete_p;
    std::size_t complete_j = 0;
    complete_cmd->add_option("--likelihoods", complete_l, "Comma-separated rationals")->required();
    complete_cmd->add_option("--priors", complete_p, "Comma-separated rationals")->required();
    complete_cmd->add_option("--index", complete_j, "0-based index j")->required();
    auto* closed_cmd = formula_cmd->add_subcommand("closed", "Card-system closed form Pr_prep[query]");
    std::string closed_deck, closed_id, closed_prep, closed_query;
    closed_cmd->add_option("--deck", closed_deck, "Deck file")->required()->check(CLI::ExistingFile);
    closed_cmd->add_option("--id", closed_id,
                           "same-var | cross-var | negated-same-var | negated-cross-var | negation-complement")
        ->required();
    closed_cmd->add_option("--prepare", closed_prep, "Preparation, e.g. Face=Q")->required();
    closed_cmd->add_option("--query", closed_query, "Queried value, e.g. Suit=S")->required();
    FormatFlags formula_fmt;
    formula_fmt.attach(formula_cmd);

    // quantum
    auto* quantum_cmd = app.add_subcommand("quantum", "Pure-state retrodiction tools");
    quantum_cmd->require_subcommand(1);
    bool normalize = false;
    quantum_cmd->add_flag("--normalize", normalize, "Rescale input states to unit norm");
    FormatFlags quantum_fmt;
    quantum_fmt.attach(quantum_cmd);

    std::string q_state, q_other, q_final;
    std::vector<std::string> q_basis;
    std::size_t q_index = 0;
    bool q_partial = false;
    auto* born_cmd = quantum_cmd->add_subcommand("born", "|<v|s>|^2");
    born_cmd->add_option("--state", q_state, "Amplitudes of s, e.g. 1,1,1")->required();
    born_cmd->add_option("--onto", q_other, "Amplitudes of v")->required();
    auto* sandwich_cmd = quantum_cmd->add_subcommand("sandwich", "Tr(rho P Q P) for rank-1 P and Q");
    std::string q_first;
    sandwich_cmd->add_option("--state", q_state, "Amplitudes of s")->required();
    sandwich_cmd->add_option("--first", q_first, "State spanning P")->required();
    sandwich_cmd->add_option("--then", q_other, "State spanning Q")->required();
    auto* abl_cmd = quantum_cmd->add_subcommand("abl", "Retrodiction of basis vector j between s and q");
    abl_cmd->add_option("--state", q_state, "Preselected state")->required();
    abl_cmd->add_option("--final", q_final, "Postselected state")->required();
    abl_cmd->add_option("--index", q_index, "0-based basis index j")->required();
    abl_cmd->add_option("--basis", q_basis, "Basis vector (repeat d times); default is the standard basis");
    abl_cmd->add_flag("--partial", q_partial, "Partial manifestation (p_j or not p_j) instead of complete");
    auto* cond_cmd = quantum_cmd->add_subcommand("condition", "Three-box amplitude condition in dimension 3");
    cond_cmd->add_option("--state", q_state, "Preselected state")->required();
    cond_cmd->add_option("--final", q_final, "Postselected state")->required();
    cond_cmd->add_option("--basis", q_basis, "Basis vector (repeat 3 times)");
    auto* slit_cmd = quantum_cmd->add_subcommand("slit", "Three-slit detector distance");
    double separation = 0, wavelength = 0;
    slit_cmd->add_option("--separation", separation, "Slit separation a")->required();
    slit_cmd->add_option("--wavelength", wavelength, "Wavelength")->required();
    auto* aad_cmd = quantum_cmd->add_subcommand("aad", "Partial versus complete retrodiction for the AAD Q basis");
    std::string alpha_text = "sqrt(1/2)", beta_text = "sqrt(1/2)";
    aad_cmd->add_option("--alpha", alpha_text, "Complex alpha")->capture_default_str();
    aad_cmd->add_option("--beta", beta_text, "Complex beta")->capture_default_str();

    // Let --json, --csv and --normalize appear after the leaf subcommand too.
    for (auto* parent : {formula_cmd, quantum_cmd})
        for (auto* leaf : parent->get_subcommands({})) leaf->fallthrough();

    // scenario
    auto* scenario_cmd = app.add_subcommand("scenario", "Run a named worked example");
    std::string scenario_name;
    std::uint64_t scenario_trials = 100000, scenario_seed = 42;
    std::string scenario_deck, scenario_alpha, scenario_beta;
    FormatFlags scenario_fmt;
    std::string names_help = "all";
    for (const auto& n : scenario_names()) names_help += " | " + n;
    scenario_cmd->add_option("name", scenario_name, names_help)->required();
    scenario_cmd->add_option("--trials", scenario_trials, "Monte Carlo trials")->capture_default_str()->check(CLI::PositiveNumber);
    scenario_cmd->add_option("--seed", scenario_seed, "Monte Carlo seed")->capture_default_str();
    scenario_cmd->add_option("--deck", scenario_deck, "Deck for counterfactual-trace")->check(CLI::ExistingFile);
    scenario_cmd->add_option("--alpha", scenario_alpha, "alpha for aad-curious");
    scenario_cmd->add_option("--beta", scenario_beta, "beta for aad-curious");
    scenario_fmt.attach(scenario_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (validate_cmd->parsed()) return run_validate(validate_path, validate_fmt.format());
        if (exact_cmd->parsed()) return run_exact(exact_exp.build(), exact_query, exact_fmt.format());
        if (sim_cmd->parsed()) return run_simulate(sim_exp.build(), trials, seed, sim_query, sim_fmt.format());

        if (formula_cmd->parsed()) {
            const Format fmt = formula_fmt.format();
            Rational result;
            if (partial_cmd->parsed()) {
                auto v = parse_rationals(partial_inputs);
                if (v.size() != 4) throw Error(ErrorCode::LengthMismatch, "--inputs needs exactly four values");
                result = formulas::retrodict_partial<Rational>({v[0], v[1], v[2], v[3]});
            } else if (complete_cmd->parsed()) {
                result = formulas::retrodict_complete(parse_rationals(complete_l), parse_rationals(complete_p),
                                                      complete_j);
            } else {
                Deck d = load_deck(closed_deck);
                Proposition prep = parse_proposition(d.schema, closed_prep);
                Proposition query = parse_proposition(d.schema, closed_query);
                if (query.negated) throw Error(ErrorCode::InvalidArguments, "--query takes a plain value");
                result = closed_form(d, parse_formula_id(closed_id), prep, query.value);
            }
            if (fmt == Format::Json)
                print_json({{"result", to_string(result)}});
            else
                std::cout << to_string(result) << '\n';
            return kOk;
        }

        if (quantum_cmd->parsed()) {
            using namespace threebox::quantum;
            const Format fmt = quantum_fmt.format();
            auto state = [&](const std::string& text) { return parse_state(text, normalize); };
            auto basis_or_standard = [&](Eigen::Index d) {
                if (q_basis.empty()) return standard_basis(d);
                std::vector<QState> b;
                for (const auto& t : q_basis) b.push_back(state(t));
                return b;
            };
            if (born_cmd->parsed()) {
                print_value("probability", born_probability(state(q_state), state(q_other)), fmt);
            } else if (sandwich_cmd->parsed()) {
                print_value("probability",
                            sandwich_probability(state(q_state), Projector::onto(state(q_first)),
                                                 Projector::onto(state(q_other))),
                            fmt);
            } else if (abl_cmd->parsed()) {
                QState s = state(q_state);
                auto basis = basis_or_standard(s.dimension());
                QState q = state(q_final);
                print_value("probability",
                            q_partial ? abl_partial(s, basis, q_index, q) : abl_complete(s, basis, q_index, q), fmt);
            } else if (cond_cmd->parsed()) {
                QState s = state(q_state);
                bool holds = threebox_condition_check(s, state(q_final), basis_or_standard(s.dimension()));
                if (fmt == Format::Json)
                    print_json({{"condition", holds}});
                else
                    std::cout << (holds ? "true" : "false") << '\n';
            } else if (slit_cmd->parsed()) {
                SlitGeometry g = three_slit_design(separation, wavelength);
                auto amps = g.detector_amplitudes();
                if (fmt == Format::Json) {
                    nlohmann::json a = nlohmann::json::array();
                    for (auto c : amps) a.push_back({round12(c.real()), round12(c.imag())});
                    print_json({{"separation", round12(g.separation)},
                                {"wavelength", round12(g.wavelength)},
                                {"distance", round12(g.distance)},
                                {"amplitudes", a},
                                {"slit23_sum", round12(std::abs(amps[1] + amps[2]))}});
                } else {
                    std::cout << "L = " << format_double(g.distance) << '\n';
                }
            } else {
                AadReport r = aad_analysis(parse_complex(alpha_text), parse_complex(beta_text));
                if (fmt == Format::Json)
                    print_json({{"partial_x", round12(r.partial_x)},
                                {"partial_q", round12(r.partial_q)},
                                {"complete_x", round12(r.complete_x)},
                                {"complete_q", round12(r.complete_q)}});
                else
                    std::cout << "partial X " << format_double(r.partial_x) << ", partial Q "
                              << format_double(r.partial_q) << ", complete X " << format_double(r.complete_x)
                              << ", complete Q " << format_double(r.complete_q) << '\n';
            }
            return kOk;
        }

        // scenario
        ScenarioOptions opt{scenario_trials, scenario_seed};
        std::vector<ScenarioReport> reports;
        auto run_one = [&](const std::string& name) {
            if (name == "counterfactual-trace" && !scenario_deck.empty())
                reports.push_back(counterfactual_trace(load_deck(scenario_deck), opt));
            else if (name == "aad-curious" && (!scenario_alpha.empty() || !scenario_beta.empty()))
                reports.push_back(aad_curious(quantum::parse_complex(scenario_alpha.empty() ? "sqrt(1/2)" : scenario_alpha),
                                              quantum::parse_complex(scenario_beta.empty() ? "sqrt(1/2)" : scenario_beta)));
            else
                reports.push_back(run_scenario(name, opt));
        };
        if (scenario_name == "all")
            for (const auto& n : scenario_names()) run_one(n);
        else
            run_one(scenario_name);
        return emit_reports(reports, scenario_fmt.format());
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
