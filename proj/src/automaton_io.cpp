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

#include "hdkit/automaton_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "hdkit/errors.hpp"

namespace hdkit {

using nlohmann::json;

namespace {

const json&
field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::vector<std::string>
string_list(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    std::vector<std::string> out;
    for (auto& x : v) {
        if (!x.is_string()) throw ParseError(std::string("\"") + key + "\" must contain strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

unsigned
natural(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be a natural number");
    return static_cast<unsigned>(j.get<long long>());
}

std::uint32_t
lookup(const std::map<std::string, std::uint32_t>& ids, const json& j, const char* what)
{
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    auto it = ids.find(j.get<std::string>());
    if (it == ids.end()) throw ParseError(std::string("unknown ") + what + " \"" + j.get<std::string>() + "\"");
    return it->second;
}

std::string
trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

/* Size-checked integer parse for the HOA reader. */
unsigned
to_natural(const std::string& s, const std::string& what)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
        throw ParseError("HOA: bad " + what + " \"" + s + "\"");
    return static_cast<unsigned>(std::stoul(s));
}

std::vector<std::string>
quoted_strings(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while ((i = s.find('"', i)) != std::string::npos) {
        auto j = s.find('"', i + 1);
        if (j == std::string::npos) throw ParseError("HOA: unterminated string");
        out.push_back(s.substr(i + 1, j - i - 1));
        i = j + 1;
    }
    return out;
}

ParityAutomaton
parse_hoa(std::string_view text, bool with_sink)
{
    std::istringstream in{std::string(text)};
    std::string line;
    bool body = false, ended = false, seen_version = false;
    long states = -1, start = -1, sets = -1, acceptance = -1;
    std::vector<std::string> aps;
    std::optional<std::pair<unsigned, unsigned>> index;
    std::vector<std::string> names;
    std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned>> edges;  // from, letter, set, to
    long current = -1;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty()) continue;
        if (ended) throw ParseError("HOA: content after --END--");
        if (!body) {
            if (t == "--BODY--") {
                body = true;
                continue;
            }
            auto colon = t.find(':');
            if (colon == std::string::npos) throw ParseError("HOA: bad header line \"" + t + "\"");
            auto key = t.substr(0, colon), rest = trim(t.substr(colon + 1));
            std::istringstream words(rest);
            if (key == "HOA") {
                if (rest != "v1") throw ParseError("HOA: unsupported version");
                seen_version = true;
            } else if (key == "States") {
                std::string w;
                words >> w;
                states = to_natural(w, "state count");
            } else if (key == "Start") {
                if (start >= 0) throw ParseError("HOA: several start states");
                std::string w;
                words >> w;
                start = to_natural(w, "start state");
            } else if (key == "AP") {
                std::string w;
                words >> w;
                auto n = to_natural(w, "AP count");
                aps = quoted_strings(rest);
                if (aps.size() != n) throw ParseError("HOA: AP count mismatch");
            } else if (key == "acc-name") {
                std::string a, b, c, k;
                words >> a >> b >> c >> k;
                if (a != "parity" || b != "min" || c != "even")
                    throw ParseError("HOA: only \"parity min even\" acceptance is supported");
                sets = to_natural(k, "acceptance set count");
            } else if (key == "Acceptance") {
                std::string w;
                words >> w;
                acceptance = to_natural(w, "acceptance set count");
            } else if (key == "hdkit-index") {
                std::string lo, hi;
                words >> lo >> hi;
                index = std::make_pair(to_natural(lo, "index"), to_natural(hi, "index"));
            } else if (key == "name" || key == "tool" || key == "properties") {
                // informational
            } else {
                throw ParseError("HOA: unsupported header \"" + key + "\"");
            }
            continue;
        }
        if (t == "--END--") {
            ended = true;
            continue;
        }
        if (t.rfind("State:", 0) == 0) {
            std::istringstream words(t.substr(6));
            std::string w;
            words >> w;
            auto id = to_natural(w, "state id");
            if (states < 0 || id >= static_cast<unsigned long>(states)) throw ParseError("HOA: state id out of range");
            auto q = quoted_strings(t);
            if (!q.empty()) {
                names.resize(static_cast<std::size_t>(states));
                names[id] = q[0];
            }
            current = id;
            if (t.find('{') != std::string::npos) throw ParseError("HOA: state-based acceptance is not supported");
            continue;
        }
        if (current < 0) throw ParseError("HOA: edge before any State:");
        if (t[0] != '[') throw ParseError("HOA: edges need an explicit label");
        auto close = t.find(']');
        if (close == std::string::npos) throw ParseError("HOA: unterminated label");
        auto letter = to_natural(trim(t.substr(1, close - 1)), "letter label");
        auto brace = t.find('{', close);
        auto brace_end = t.find('}', close);
        if (brace == std::string::npos || brace_end == std::string::npos || brace_end < brace)
            throw ParseError("HOA: edge without acceptance set");
        auto dst = to_natural(trim(t.substr(close + 1, brace - close - 1)), "edge target");
        auto set_text = trim(t.substr(brace + 1, brace_end - brace - 1));
        if (set_text.find(' ') != std::string::npos)
            throw ParseError("HOA: each edge must carry exactly one acceptance set");
        auto set = to_natural(set_text, "acceptance set");
        if (!trim(t.substr(brace_end + 1)).empty()) throw ParseError("HOA: trailing text on edge");
        edges.emplace_back(static_cast<unsigned>(current), letter, set, dst);
        continue;
    }
    if (!seen_version) throw ParseError("HOA: missing \"HOA: v1\"");
    if (!body || !ended) throw ParseError("HOA: missing --BODY-- or --END--");
    if (states < 0 || start < 0 || sets < 0) throw ParseError("HOA: missing States, Start or acc-name");
    if (acceptance >= 0 && acceptance != sets) throw ParseError("HOA: Acceptance and acc-name disagree");
    if (aps.empty()) throw ParseError("HOA: missing AP list");
    AutomatonParts p;
    p.alphabet = aps;
    for (long q = 0; q < states; q++) {
        auto i = static_cast<std::size_t>(q);
        p.states.push_back(i < names.size() && !names[i].empty() ? names[i] : std::to_string(q));
    }
    p.initial = static_cast<StateId>(start);
    if (index) {
        p.index_low = index->first;
        p.index_high = index->second;
    } else {
        if (sets == 0) throw ParseError("HOA: no acceptance sets");
        p.index_low = 0;
        p.index_high = static_cast<unsigned>(sets - 1);
    }
    for (auto [from, letter, set, to] : edges) {
        if (letter >= aps.size()) throw ParseError("HOA: letter label out of range");
        if (set >= static_cast<unsigned long>(sets)) throw ParseError("HOA: acceptance set out of range");
        p.transitions.push_back({0, from, letter, set, to});
    }
    return ParityAutomaton::from_parts(std::move(p), with_sink);
}

} // namespace

ParityAutomaton
automaton_from_json(const json& j, bool complete_with_sink)
{
    if (!j.is_object()) throw ParseError("automaton must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* known[] = {"alphabet", "states", "initial", "index", "transitions"};
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
            throw ParseError("unknown field \"" + it.key() + "\"");
    }
    AutomatonParts p;
    p.alphabet = string_list(j, "alphabet");
    p.states = string_list(j, "states");
    std::map<std::string, std::uint32_t> sid, lid;
    for (std::size_t i = 0; i < p.states.size(); i++) {
        if (!sid.emplace(p.states[i], static_cast<std::uint32_t>(i)).second)
            throw ParseError("duplicate state \"" + p.states[i] + "\"");
    }
    for (std::size_t i = 0; i < p.alphabet.size(); i++) {
        if (!lid.emplace(p.alphabet[i], static_cast<std::uint32_t>(i)).second)
            throw ParseError("duplicate letter \"" + p.alphabet[i] + "\"");
    }
    p.initial = lookup(sid, field(j, "initial"), "state");
    const auto& idx = field(j, "index");
    if (!idx.is_array() || idx.size() != 2) throw ParseError("\"index\" must be a pair [i,j]");
    p.index_low = natural(idx[0], "index");
    p.index_high = natural(idx[1], "index");
    const auto& ts = field(j, "transitions");
    if (!ts.is_array()) throw ParseError("\"transitions\" must be an array");
    for (auto& t : ts) {
        if (!t.is_object()) throw ParseError("transition must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (it.key() != "from" && it.key() != "letter" && it.key() != "priority" && it.key() != "to")
                throw ParseError("unknown transition field \"" + it.key() + "\"");
        }
        Transition x;
        x.from = lookup(sid, field(t, "from"), "state");
        x.letter = lookup(lid, field(t, "letter"), "letter");
        x.priority = natural(field(t, "priority"), "priority");
        x.to = lookup(sid, field(t, "to"), "state");
        p.transitions.push_back(x);
    }
    return ParityAutomaton::from_parts(std::move(p), complete_with_sink);
}

ParityAutomaton
parse_automaton(std::string_view text, Format format, bool complete_with_sink)
{
    if (format == Format::hoa) return parse_hoa(text, complete_with_sink);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return automaton_from_json(j, complete_with_sink);
}

nlohmann::ordered_json
automaton_to_json(const ParityAutomaton& a)
{
    nlohmann::ordered_json j;
    j["alphabet"] = a.letter_names();
    j["states"] = a.state_names();
    j["initial"] = a.state_name(a.initial());
    j["index"] = {a.index_low(), a.index_high()};
    auto ts = nlohmann::ordered_json::array();
    for (auto& t : a.transitions()) {
        nlohmann::ordered_json x;
        x["from"] = a.state_name(t.from);
        x["letter"] = a.letter_name(t.letter);
        x["priority"] = t.priority;
        x["to"] = a.state_name(t.to);
        ts.push_back(std::move(x));
    }
    j["transitions"] = std::move(ts);
    return j;
}

std::string
serialise_native(const ParityAutomaton& a)
{
    return automaton_to_json(a).dump(2) + "\n";
}

std::string
serialise_hoa(const ParityAutomaton& a)
{
    std::ostringstream o;
    const unsigned sets = a.index_high() + 1;
    o << "HOA: v1\n";
    o << "States: " << a.num_states() << "\n";
    o << "Start: " << a.initial() << "\n";
    o << "AP: " << a.num_letters();
    for (auto& l : a.letter_names()) o << " \"" << l << "\"";
    o << "\n";
    o << "acc-name: parity min even " << sets << "\n";
    std::string acc;
    for (unsigned i = sets; i-- > 0;) {
        std::string atom = (i % 2 == 0 ? "Inf(" : "Fin(") + std::to_string(i) + ")";
        if (acc.empty()) acc = atom;
        else acc = atom + (i % 2 == 0 ? " | (" : " & (") + acc + ")";
    }
    o << "Acceptance: " << sets << " " << acc << "\n";
    if (a.index_low() != 0) o << "hdkit-index: " << a.index_low() << " " << a.index_high() << "\n";
    o << "--BODY--\n";
    // grouped by source, otherwise in id order, so grouped inputs round-trip exactly
    std::vector<std::vector<TransId>> by_state(a.num_states());
    for (auto& t : a.transitions()) by_state[t.from].push_back(t.id);
    for (StateId q = 0; q < a.num_states(); q++) {
        o << "State: " << q << " \"" << a.state_name(q) << "\"\n";
        for (auto id : by_state[q]) {
            const auto& t = a.transition(id);
            o << "[" << t.letter << "] " << t.to << " {" << t.priority << "}\n";
        }
    }
    o << "--END--\n";
    return o.str();
}

Lasso
parse_lasso(std::string_view text, const ParityAutomaton& a)
{
    auto semi = text.find(';');
    if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
        throw ParseError("lasso must have the form \"u;v\"");
    auto read = [&](std::string_view part) {
        std::vector<LetterId> out;
        std::istringstream in{std::string(part)};
        std::string w;
        while (in >> w) {
            auto l = a.find_letter(w);
            if (!l) throw ParseError("unknown letter \"" + w + "\" in lasso");
            out.push_back(*l);
        }
        return out;
    };
    Lasso w{read(text.substr(0, semi)), read(text.substr(semi + 1))};
    if (w.cycle.empty()) throw ParseError("lasso cycle must be nonempty");
    return w;
}

std::string
format_lasso(const Lasso& w, const ParityAutomaton& a)
{
    std::string s;
    for (std::size_t i = 0; i < w.prefix.size(); i++) s += (i ? " " : "") + a.letter_name(w.prefix[i]);
    s += ";";
    for (std::size_t i = 0; i < w.cycle.size(); i++) s += (i ? " " : "") + a.letter_name(w.cycle[i]);
    return s;
}

std::string
read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Format
detect_format(std::string_view text)
{
    auto b = text.find_first_not_of(" \t\r\n");
    if (b != std::string_view::npos && text.substr(b, 4) == "HOA:") return Format::hoa;
    return Format::native;
}

} // namespace hdkit
