/*
 * Copyright 2026 The hdkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hdkit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdkit/automaton_io.hpp"
#include "hdkit/errors.hpp"
#include "hdkit/generate.hpp"
#include "hdkit/hd.hpp"
#include "hdkit/normalize.hpp"
#include "hdkit/oracle.hpp"
#include "hdkit/strategy.hpp"
#include "hdkit/token_games.hpp"

namespace hdkit {

namespace {

using ojson = nlohmann::ordered_json;

struct Input
{
    std::string path;
    std::string format = "auto";
    bool sink = false;

    void add(CLI::App* app)
    {
        app->add_option("--in", path, "automaton file, - for standard input")->required();
        app->add_option("--format", format, "native, hoa or auto")->check(CLI::IsMember({"auto", "native", "hoa"}));
        app->add_flag("--sink", sink, "complete a partial automaton with a rejecting sink");
    }

    ParityAutomaton load() const { return load_from(path); }

    ParityAutomaton load_from(const std::string& p) const
    {
        std::string text;
        if (p == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        } else {
            text = read_file(p);
        }
        Format f = format == "auto" ? detect_format(text) : format == "hoa" ? Format::hoa : Format::native;
        return parse_automaton(text, f, sink);
    }
};

nlohmann::json
load_json(const std::string& path)
{
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::pair<unsigned, unsigned>
parse_index(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("index must look like i,j");
    try {
        auto lo = std::stoul(s.substr(0, comma)), hi = std::stoul(s.substr(comma + 1));
        if (lo > hi || hi > 30) throw ParseError("bad index " + s);
        return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
    } catch (const std::logic_error&) {
        throw ParseError("bad index " + s);
    }
}

StateId
state_arg(const ParityAutomaton& a, const std::string& name)
{
    auto q = a.find_state(name);
    if (!q) throw ParseError("unknown state '" + name + "'");
    return *q;
}

std::vector<std::string>
split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string x; std::getline(in, x, ',');) out.push_back(x);
    return out;
}

struct GenArgs
{
    std::uint64_t seed = 1;
    std::size_t count = 1;
    std::size_t states = 3;
    std::size_t letters = 2;
    std::string index = "0,2";
    double density = 0.3;

    void add(CLI::App* app, std::size_t default_count)
    {
        count = default_count;
        app->add_option("--seed", seed);
        app->add_option("--count", count);
        app->add_option("--states", states)->check(CLI::Range(1, 64));
        app->add_option("--letters", letters)->check(CLI::Range(1, 26));
        app->add_option("--index", index, "least and greatest priority, e.g. 0,3");
        app->add_option("--density", density)->check(CLI::Range(0.0, 1.0));
    }

    GenSpec spec() const
    {
        GenSpec g;
        g.seed = seed;
        g.count = count;
        g.states = states;
        g.letters = letters;
        std::tie(g.index_low, g.index_high) = parse_index(index);
        g.density = density;
        return g;
    }
};

ojson
fuzz(const GenSpec& spec, unsigned jobs)
{
    auto all = generate(spec);
    struct Outcome
    {
        int state = 0;  // 0 agree, 1 disagree, 2 out of guard
        bool hd = false;
        bool oracle = false;
    };
    std::vector<Outcome> res(all.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < all.size();) {
            auto& o = res[i];
            o.hd = decide_hd(all[i]).is_hd;
            try {
                o.oracle = decide_hd_reference(all[i]).is_hd;
                o.state = o.oracle == o.hd ? 0 : 1;
            } catch (const ResourceLimit&) {
                o.state = 2;
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, all.size()))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; j++) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t agree = 0, disagree = 0, limits = 0, hd = 0;
    auto diffs = ojson::array();
    for (std::size_t i = 0; i < all.size(); i++) {
        const auto& o = res[i];
        hd += o.hd;
        if (o.state == 0) agree++;
        if (o.state == 2) limits++;
        if (o.state == 1) {
            disagree++;
            diffs.push_back({{"index", i},
                             {"two_token", o.hd ? "hd" : "not-hd"},
                             {"oracle", o.oracle ? "hd" : "not-hd"},
                             {"automaton", automaton_to_json(all[i])}});
        }
    }
    return {{"agree", agree},
            {"disagree", disagree},
            {"out_of_guard", limits},
            {"instances", all.size()},
            {"hd", hd},
            {"seed", spec.seed},
            {"states", spec.states},
            {"letters", spec.letters},
            {"index", {spec.index_low, spec.index_high}},
            {"density", spec.density},
            {"disagreements", diffs}};
}

ojson
normalise(const ParityAutomaton& a, const std::string& pipeline)
{
    ojson j;
    std::string p = pipeline;
    if (p == "auto") {
        if (a.index_low() == 1 && a.index_high() == 2) p = "cobuchi";
        else if (a.index_low() == 0 && a.index_high() <= 1) p = "rank-buchi";
        else if (a.index_low() == 1) p = "two-priority";
        else p = "full-0K";
    }
    j["pipeline"] = p;
    if (p == "cobuchi" || p == "two-priority") {
        auto b = p == "cobuchi" ? cobuchi_normalise(a) : two_priority_reduce(a);
        std::size_t relabelled = 0;
        for (TransId t = 0; t < a.num_transitions(); t++) {
            relabelled += a.transition(t).priority != b.transition(t).priority;
        }
        j["report"] = {{"iterations", relabelled ? 1 : 0},
                       {"steps", ojson::array({{{"step", p}, {"removed", 0}, {"relabelled", relabelled}}})}};
        j["automaton"] = automaton_to_json(b);
        return j;
    }
    if (p != "rank-buchi" && p != "full-0K") throw ParseError("unknown pipeline " + pipeline);
    auto r = p == "rank-buchi" ? rank_reduce_buchi(a) : normalise_0K(a);
    j["report"] = report_to_json(r);
    j["automaton"] = automaton_to_json(r.output);
    return j;
}

const char*
strategy_kind(const ParityAutomaton& a)
{
    if (a.index_low() == 1 && a.index_high() == 2) {
        try {
            safety_reach_kind(a);
            return "safety-reach";
        } catch (const PreconditionError&) {
            return "cobuchi";
        }
    }
    if (a.index_low() == 0 && a.index_high() <= 1) return "buchi";
    throw PreconditionError("strategy extraction covers safety, reachability, coBuchi and Buchi automata");
}

} // namespace

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"hdkit: history-determinism of parity automata via token games"};
    app.require_subcommand(1);
    bool timings = false;
    app.add_flag("--timings", timings, "add wall-clock timings to the report");

    Input in;
    ojson result;

    auto* decide = app.add_subcommand("decide", "decide history-determinism");
    std::string method = "two-token";
    bool certificate = false;
    in.add(decide);
    decide->add_option("--method", method)->check(CLI::IsMember({"two-token", "oracle", "safety-reach"}));
    decide->add_flag("--certificate", certificate, "include the pruned automaton when HD");

    auto* oracle = app.add_subcommand("oracle", "reference procedures");
    auto* oracle_decide = oracle->add_subcommand("decide", "decide via determinisation");
    oracle->require_subcommand(1);
    Input oin;
    oin.add(oracle_decide);

    auto* game = app.add_subcommand("game", "solve token and simulation games");
    Input gin;
    gin.add(game);
    unsigned tokens = 2;
    std::string eve_state, adam_states, other;
    bool everywhere = false, dump = false;
    unsigned tree_bound = 0;
    game->add_option("--tokens", tokens)->check(CLI::Range(1, 3));
    game->add_option("--eve", eve_state, "Eve's start state (default initial)");
    game->add_option("--adam", adam_states, "Adam's start states, comma separated");
    game->add_flag("--everywhere", everywhere, "from every weakly coreachable tuple");
    game->add_option("--simulated", other, "decide whether --in simulates this automaton");
    game->add_flag("--dump", dump, "include the product arena");
    game->add_option("--tree", tree_bound, "print the token Zielonka tree for [0,K] instead");

    auto* norm = app.add_subcommand("normalize", "normalisation pipelines");
    Input nin;
    nin.add(norm);
    std::string pipeline = "auto";
    norm->add_option("--pipeline", pipeline)
        ->check(CLI::IsMember({"auto", "cobuchi", "two-priority", "rank-buchi", "full-0K"}));

    auto* strat = app.add_subcommand("strategy", "HD strategies");
    strat->require_subcommand(1);
    auto* sx = strat->add_subcommand("extract", "extract a finite-memory strategy");
    auto* sv = strat->add_subcommand("verify", "check a strategy exactly");
    auto* ss = strat->add_subcommand("simulate", "run a strategy on a lasso");
    Input sin;
    std::string strategy_file, word;
    std::size_t bound = 4;
    for (auto* c : {sx, sv, ss}) sin.add(c);
    for (auto* c : {sv, ss}) c->add_option("--strategy", strategy_file)->required();
    sv->add_option("--bound", bound, "lasso bound for the fallback");
    ss->add_option("--word", word, "lasso u;v")->required();

    auto* ge = app.add_subcommand("ge", "good-enough realisability of a deterministic specification");
    Input ein;
    ein.add(ge);
    std::string split_file;
    bool ge_check = false;
    ge->add_option("--split", split_file, "JSON map letter -> [input, output]; default splits names at /");
    ge->add_flag("--check", ge_check, "also run the reference game");

    auto* gen = app.add_subcommand("gen", "random complete automata");
    GenArgs gargs;
    gargs.add(gen, 1);

    auto* fz = app.add_subcommand("fuzz", "cross-check decide against the oracle");
    GenArgs fargs;
    fargs.add(fz, 100);
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    fz->add_option("--jobs", jobs)->check(CLI::Range(1, 256));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "hdkit: " << e.what() << "\n";
        out << ojson{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::string kind;
    int code = 0;
    try {
        if (*decide) {
            auto a = in.load();
            HdVerdict v = method == "oracle" ? decide_hd_oracle(a)
                        : method == "safety-reach" ? decide_hd_safety_reach(a)
                                                   : decide_hd(a);
            result = verdict_to_json(v);
            if (certificate && v.is_hd) {
                if (v.pruned) result["pruned"] = automaton_to_json(*v.pruned);
                else if (method == "two-token") result["pruned"] = automaton_to_json(prune_everywhere(a));
            }
        } else if (*oracle_decide) {
            auto a = oin.load();
            auto r = decide_hd_reference(a);
            result = {{"verdict", r.is_hd ? "hd" : "not-hd"},
                      {"method", "oracle"},
                      {"states", a.num_states()},
                      {"transitions", a.num_transitions()},
                      {"buchi_states", r.buchi_states},
                      {"det_states", r.det_states},
                      {"game_vertices", r.game_vertices}};
        } else if (*game) {
            if (tree_bound > 0) {
                result = token_tree(tree_bound, tokens).to_json();
            } else {
                auto a = gin.load();
                if (!other.empty()) {
                    auto b = gin.load_from(other);
                    auto r = build_simulation(a, b);
                    result = {{"game", "simulation"},
                              {"winner", r.winner == Player::eve ? "eve" : "adam"},
                              {"vertices", r.product.game.num_vertices()}};
                    if (dump) result["arena"] = game_to_json(r.product.game);
                } else if (everywhere) {
                    result = {{"game", "G" + std::to_string(tokens)},
                              {"everywhere", true},
                              {"winner", wins_everywhere(a, tokens) ? "eve" : "adam"}};
                } else {
                    TokenConfig cfg;
                    cfg.eve = eve_state.empty() ? a.initial() : state_arg(a, eve_state);
                    if (adam_states.empty()) {
                        cfg.adam.assign(tokens, cfg.eve);
                    } else {
                        for (auto& s : split_list(adam_states)) cfg.adam.push_back(state_arg(a, s));
                        if (cfg.adam.size() != tokens) throw ParseError("--adam needs one state per token");
                    }
                    auto r = wins_gk(a, cfg);
                    ojson adam = ojson::array();
                    for (auto p : cfg.adam) adam.push_back(a.state_name(p));
                    result = {{"game", "G" + std::to_string(tokens)},
                              {"eve", a.state_name(cfg.eve)},
                              {"adam", adam},
                              {"winner", r.winner == Player::eve ? "eve" : "adam"},
                              {"vertices", r.product.game.num_vertices()},
                              {"edges", r.product.game.num_edges()}};
                    if (dump) result["arena"] = game_to_json(r.product.game);
                }
            }
        } else if (*norm) {
            result = normalise(nin.load(), pipeline);
        } else if (*sx) {
            auto a = sin.load();
            std::string k = strategy_kind(a);
            result["kind"] = k;
            if (k == "safety-reach") {
                result["strategy"] = strategy_to_json(a, extract_safety_reach(a));
            } else if (k == "cobuchi") {
                result["strategy"] = strategy_to_json(a, extract_cobuchi(a));
            } else {
                auto subject = coverage(a, CoverageKind::reach).holds ? a : rank_reduce_buchi(a).output;
                if (!(subject == a)) result["automaton"] = automaton_to_json(subject);
                result["strategy"] = strategy_to_json(subject, extract_buchi(subject));
            }
        } else if (*sv) {
            auto a = sin.load();
            auto s = strategy_from_json(a, load_json(strategy_file));
            auto v = verify_strategy(a, s, bound);
            result = {{"winning", v.winning}, {"exact", v.exact}, {"memory", s.memory.size()}};
            if (!v.reason.empty()) result["reason"] = v.reason;
            if (v.witness) result["witness"] = format_lasso(*v.witness, a);
        } else if (*ss) {
            auto a = sin.load();
            auto s = strategy_from_json(a, load_json(strategy_file));
            auto r = simulate_play(a, s, parse_lasso(word, a));
            result = {{"priorities", r.priorities},
                      {"cycle_start", r.cycle_start},
                      {"cycle_min", r.cycle_min},
                      {"accepted", r.accepted},
                      {"in_language", r.in_language},
                      {"violates", r.violates}};
        } else if (*ge) {
            auto d = ein.load();
            auto split = split_file.empty() ? split_from_names(d) : split_from_json(d, load_json(split_file));
            result = {{"realisable", ge_realisable(d, split)}, {"method", method_name(HdMethod::two_token)}};
            if (ge_check) result["reference"] = ge_reference(d, split);
        } else if (*gen) {
            auto all = generate(gargs.spec());
            if (all.size() == 1) {
                result = automaton_to_json(all[0]);
            } else {
                result = ojson::array();
                for (auto& a : all) result.push_back(automaton_to_json(a));
            }
        } else if (*fz) {
            result = fuzz(fargs.spec(), jobs);
        }
    } catch (const ParseError& e) {
        kind = "parse", code = 2;
        err << "hdkit: " << e.what() << "\n";
        result = {{"error", {{"kind", kind}, {"message", e.what()}}}};
    } catch (const PreconditionError& e) {
        kind = "precondition", code = 3;
        err << "hdkit: " << e.what() << "\n";
        result = {{"error", {{"kind", kind}, {"message", e.what()}}}};
    } catch (const ResourceLimit& e) {
        kind = "resource", code = 4;
        err << "hdkit: " << e.what() << "\n";
        result = {{"error", {{"kind", kind}, {"message", e.what()}}}};
    } catch (const std::exception& e) {
        kind = "internal", code = 1;
        err << "hdkit: internal error: " << e.what() << "\n";
        result = {{"error", {{"kind", kind}, {"message", e.what()}}}};
    }
    if (timings && result.is_object()) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        result["timings"] = {{"wall_ms", ms}};
    }
    out << result.dump() << "\n";
    return code;
}

} // namespace hdkit
