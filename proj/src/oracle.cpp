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

#include "hdkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "hdkit/errors.hpp"

namespace hdkit {

std::size_t
oracle_guard()
{
    if (const char* s = std::getenv("HDKIT_GUARD")) {
        char* end = nullptr;
        auto v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return 10;
}

ParityAutomaton
parity_to_buchi(const ParityAutomaton& a)
{
    const auto n = a.num_states();
    const unsigned low = a.index_low(), high = a.index_high();
    const bool waiting = low % 2 == 1;
    // copy c watches for its priority bound; a bound of ~0u marks the waiting copy
    std::vector<unsigned> copies;
    if (waiting) copies.push_back(~0u);
    for (unsigned e = low + (low % 2); e <= high; e += 2) copies.push_back(e);
    AutomatonParts p;
    p.alphabet = a.letter_names();
    p.index_low = 0;
    p.index_high = 1;
    for (std::size_t c = 0; c < copies.size(); c++) {
        for (StateId q = 0; q < n; q++) {
            auto tag = copies[c] == ~0u ? std::string("w") : std::to_string(copies[c]);
            p.states.push_back(a.state_name(q) + "@" + tag);
        }
    }
    auto id = [&](std::size_t c, StateId q) { return static_cast<StateId>(c * n + q); };
    p.initial = id(0, a.initial());
    for (std::size_t c = 0; c < copies.size(); c++) {
        for (auto& t : a.transitions()) {
            if (copies[c] == ~0u) {
                p.transitions.push_back({0, id(c, t.from), t.letter, 1, id(c, t.to)});
            } else if (t.priority >= copies[c]) {
                p.transitions.push_back({0, id(c, t.from), t.letter, t.priority == copies[c] ? 0u : 1u, id(c, t.to)});
            }
            if (c == 0) {
                for (std::size_t c2 = 1; c2 < copies.size(); c2++)
                    p.transitions.push_back({0, id(0, t.from), t.letter, 1, id(c2, t.to)});
            }
        }
    }
    auto b = ParityAutomaton::from_parts(std::move(p), true);
    return trim_unreachable(b).automaton;
}

namespace {

struct SafraNode
{
    std::uint32_t parent;
    std::uint32_t label;
};

using SafraTree = std::vector<SafraNode>;

struct SafraStep
{
    const std::vector<std::uint32_t>& succ;  // (state * letters + letter) -> successor mask
    const std::vector<std::uint32_t>& acc;   // same, accepting transitions only
    std::size_t letters;

    std::uint32_t image(const std::vector<std::uint32_t>& table, std::uint32_t mask, LetterId a) const
    {
        std::uint32_t out = 0;
        while (mask) {
            auto q = static_cast<std::uint32_t>(std::countr_zero(mask));
            mask &= mask - 1;
            out |= table[q * letters + a];
        }
        return out;
    }

    std::pair<SafraTree, unsigned> operator()(const SafraTree& t, LetterId a, unsigned neutral) const
    {
        const auto m = static_cast<std::uint32_t>(t.size());
        if (m == 0) return {{}, 1};
        std::vector<std::uint32_t> parent(2 * m), label(2 * m);
        for (std::uint32_t i = 0; i < m; i++) {
            parent[i] = t[i].parent;
            label[i] = image(succ, t[i].label, a);
            parent[m + i] = i;
            label[m + i] = image(acc, t[i].label, a);
        }
        std::vector<std::vector<std::uint32_t>> kids(2 * m);
        for (std::uint32_t w = 1; w < 2 * m; w++) kids[parent[w]].push_back(w);
        kids[0].erase(std::remove(kids[0].begin(), kids[0].end(), 0u), kids[0].end());
        // older siblings keep shared states
        std::function<void(std::uint32_t, std::uint32_t)> strip = [&](std::uint32_t v, std::uint32_t mask) {
            label[v] &= ~mask;
            for (auto c : kids[v]) strip(c, mask);
        };
        std::function<void(std::uint32_t)> merge = [&](std::uint32_t v) {
            std::uint32_t seen = 0;
            for (auto c : kids[v]) {
                strip(c, seen);
                seen |= label[c];
                merge(c);
            }
        };
        merge(0);
        unsigned prio = neutral;
        std::vector<char> alive(2 * m);
        for (std::uint32_t w = 0; w < 2 * m; w++) {
            alive[w] = label[w] != 0;
            if (!alive[w] && w < m) prio = std::min(prio, 2 * (w + 1) - 1);
        }
        std::function<void(std::uint32_t)> kill = [&](std::uint32_t v) {
            for (auto c : kids[v]) {
                if (alive[c] && c < m) prio = std::min(prio, 2 * (c + 1) - 1);
                alive[c] = 0;
                kill(c);
            }
        };
        std::function<void(std::uint32_t)> vertical = [&](std::uint32_t v) {
            if (!alive[v]) return;
            std::uint32_t below = 0;
            bool any = false;
            for (auto c : kids[v]) {
                if (alive[c]) {
                    below |= label[c];
                    any = true;
                }
            }
            if (any && below == label[v]) {
                HDKIT_ASSERT(v < m, "a fresh Safra node cannot be green");
                kill(v);
                prio = std::min(prio, 2 * (v + 1));
                return;
            }
            for (auto c : kids[v]) vertical(c);
        };
        vertical(0);
        if (!alive[0]) return {{}, std::min(prio, 1u)};
        std::vector<std::uint32_t> rename(2 * m, NONE);
        SafraTree out;
        for (std::uint32_t w = 0; w < 2 * m; w++) {
            if (!alive[w]) continue;
            rename[w] = static_cast<std::uint32_t>(out.size());
            out.push_back({w == 0 ? NONE : rename[parent[w]], label[w]});
        }
        return {out, prio};
    }
};

std::vector<std::uint32_t>
encode(const SafraTree& t)
{
    std::vector<std::uint32_t> k;
    for (auto& n : t) {
        k.push_back(n.parent);
        k.push_back(n.label);
    }
    return k;
}

struct VectorHash
{
    std::size_t operator()(const std::vector<std::uint32_t>& v) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

} // namespace

ParityAutomaton
determinise_buchi(const ParityAutomaton& b)
{
    if (b.index_low() != 0 || b.index_high() > 1) throw PreconditionError("determinisation needs a [0,1] automaton");
    const auto n = b.num_states(), letters = b.num_letters();
    // live states reach a cycle through an accepting transition
    std::vector<bool> live(n, false);
    for (auto& comp : scc_above(b, 0)) {
        bool accepting = std::any_of(comp.begin(), comp.end(), [&](TransId t) { return b.transition(t).priority == 0; });
        if (!accepting) continue;
        for (auto t : comp) live[b.transition(t).from] = true;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& t : b.transitions()) {
            if (live[t.to] && !live[t.from]) {
                live[t.from] = true;
                changed = true;
            }
        }
    }
    std::vector<std::uint32_t> bit(n, NONE);
    std::uint32_t m = 0;
    for (StateId q = 0; q < n; q++) {
        if (live[q]) bit[q] = m++;
    }
    if (m > oracle_guard() || m > 31)
        throw ResourceLimit("determinisation guard exceeded: " + std::to_string(m) + " live states");
    std::vector<std::uint32_t> succ(std::max<std::uint32_t>(m, 1) * letters, 0), acc(succ.size(), 0);
    for (auto& t : b.transitions()) {
        if (!live[t.from] || !live[t.to]) continue;
        succ[bit[t.from] * letters + t.letter] |= 1u << bit[t.to];
        if (t.priority == 0) acc[bit[t.from] * letters + t.letter] |= 1u << bit[t.to];
    }
    const unsigned neutral = 2 * m + 1;
    SafraStep step{succ, acc, letters};
    std::unordered_map<std::vector<std::uint32_t>, StateId, VectorHash> ids;
    std::vector<SafraTree> trees;
    auto add = [&](const SafraTree& t) {
        auto k = encode(t);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        auto id = static_cast<StateId>(trees.size());
        if (id >= 200000) throw ResourceLimit("determinisation produced too many states");
        ids.emplace(std::move(k), id);
        trees.push_back(t);
        return id;
    };
    SafraTree init;
    if (live[b.initial()]) init.push_back({NONE, 1u << bit[b.initial()]});
    add(init);
    AutomatonParts p;
    p.alphabet = b.letter_names();
    p.index_low = 0;
    p.index_high = neutral;
    for (std::size_t i = 0; i < trees.size(); i++) {
        for (LetterId a = 0; a < letters; a++) {
            auto [next, prio] = step(trees[i], a, neutral);
            auto j = add(next);
            p.transitions.push_back({0, static_cast<StateId>(i), a, prio, j});
        }
    }
    for (std::size_t i = 0; i < trees.size(); i++) p.states.push_back("t" + std::to_string(i));
    p.initial = 0;
    return minimise_priorities(ParityAutomaton(std::move(p)));
}

ParityAutomaton
minimise_priorities(const ParityAutomaton& d)
{
    Digraph g;
    g.n = static_cast<std::uint32_t>(d.num_states());
    for (auto& t : d.transitions()) g.add_edge(t.from, t.to);
    std::vector<unsigned> out(d.num_transitions(), 0);
    std::function<void(const std::vector<bool>&, unsigned)> assign = [&](const std::vector<bool>& active, unsigned lo) {
        std::uint32_t count;
        auto comp = scc(g, active, count);
        std::vector<std::vector<TransId>> inner(count);
        for (auto& t : d.transitions()) {
            if (active[t.id] && comp[t.from] == comp[t.to]) inner[comp[t.from]].push_back(t.id);
        }
        for (auto& es : inner) {
            if (es.empty()) continue;
            unsigned mn = ~0u;
            for (auto e : es) mn = std::min(mn, d.transition(e).priority);
            unsigned v = lo + ((lo % 2) != (mn % 2) ? 1 : 0);
            std::vector<bool> sub(d.num_transitions(), false);
            for (auto e : es) {
                out[e] = v;
                if (d.transition(e).priority != mn) sub[e] = true;
            }
            assign(sub, v + 1);
        }
    };
    assign(std::vector<bool>(d.num_transitions(), true), 0);
    auto p = d.parts();
    unsigned high = 0;
    for (auto& t : p.transitions) {
        t.priority = out[t.id];
        high = std::max(high, t.priority);
    }
    p.index_low = 0;
    p.index_high = high;
    return ParityAutomaton(std::move(p));
}

namespace {

/* Trees for "one of the first dims-1 minima is even or the last is odd". */
const ZielonkaTree&
letter_game_tree(unsigned K, unsigned dims)
{
    static std::mutex lock;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<ZielonkaTree>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto& slot = cache[{K, dims}];
    if (!slot) {
        slot = std::make_unique<ZielonkaTree>(build_zielonka_boxes(K, dims, [](const std::vector<std::uint8_t>& c) {
            for (std::size_t i = 0; i + 1 < c.size(); i++) {
                if (c[i] % 2 == 0) return true;
            }
            return c.back() % 2 == 1;
        }));
    }
    return *slot;
}

unsigned
even_shift(const ParityAutomaton& a)
{
    return a.index_low() - a.index_low() % 2;
}

/*
 * Eve moves k tokens in a while a deterministic d follows Adam's letters;
 * she must keep one token accepting whenever d accepts.
 */
bool
letter_game(const ParityAutomaton& a, const ParityAutomaton& d, unsigned k, std::size_t* vertices)
{
    const unsigned sa = even_shift(a), sd = even_shift(d);
    const unsigned K = std::max({1u, a.index_high() - sa, d.index_high() - sd});
    const auto& tree = letter_game_tree(K, k + 1);
    const unsigned mid = tree.height() + 1;
    const std::uint64_t na = a.num_states(), nd = d.num_states(), nb = tree.num_branches();
    ParityGame g;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> pos;  // tokens..., d-state, branch
    std::vector<std::uint32_t> queue;
    auto v1 = [&](const std::vector<std::uint32_t>& x) {
        std::uint64_t key = 0;
        for (unsigned i = 0; i < k; i++) key = key * na + x[i];
        key = (key * nd + x[k]) * nb + x[k + 1];
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        auto v = g.add_vertex(Player::adam);
        index.emplace(key, v);
        pos.resize(v + 1);
        pos[v] = x;
        queue.push_back(v);
        return v;
    };
    std::vector<std::uint32_t> start(k, a.initial());
    start.push_back(d.initial());
    start.push_back(0);
    auto root = v1(start);
    for (std::size_t i = 0; i < queue.size(); i++) {
        const auto v = queue[i];
        const auto x = pos[v];
        for (LetterId l = 0; l < a.num_letters(); l++) {
            const auto& td = d.transition(d.out(x[k], l)[0]);
            // Eve picks the k transitions one after another
            std::vector<std::uint32_t> frontier{g.add_vertex(Player::eve)};
            pos.resize(g.num_vertices());
            g.add_edge(v, frontier[0], mid);
            std::vector<std::vector<TransId>> picks{{}};
            for (unsigned j = 0; j < k; j++) {
                std::vector<std::uint32_t> next;
                std::vector<std::vector<TransId>> next_picks;
                for (std::size_t f = 0; f < frontier.size(); f++) {
                    for (auto t : a.out(x[j], l)) {
                        auto chosen = picks[f];
                        chosen.push_back(t);
                        if (j + 1 < k) {
                            auto w = g.add_vertex(Player::eve);
                            pos.resize(g.num_vertices());
                            g.add_edge(frontier[f], w, mid);
                            next.push_back(w);
                            next_picks.push_back(std::move(chosen));
                            continue;
                        }
                        std::vector<std::uint8_t> colour;
                        std::vector<std::uint32_t> y;
                        for (auto c : chosen) {
                            colour.push_back(static_cast<std::uint8_t>(a.transition(c).priority - sa));
                            y.push_back(a.transition(c).to);
                        }
                        colour.push_back(static_cast<std::uint8_t>(td.priority - sd));
                        auto [b2, prio] = tree.successor(x[k + 1], tree.colour_of(colour));
                        y.push_back(td.to);
                        y.push_back(b2);
                        auto target = v1(y);
                        g.add_edge(frontier[f], target, prio);
                    }
                }
                frontier = std::move(next);
                picks = std::move(next_picks);
            }
        }
    }
    g.finalise();
    if (vertices) *vertices = g.num_vertices();
    return solve_parity(g).eve_wins(root);
}

} // namespace

OracleVerdict
decide_hd_reference(const ParityAutomaton& a)
{
    OracleVerdict v;
    auto b = parity_to_buchi(a);
    auto d = determinise_buchi(b);
    v.buchi_states = b.num_states();
    v.det_states = d.num_states();
    v.is_hd = letter_game(a, d, 1, &v.game_vertices);
    return v;
}

bool
explorable_reference(const ParityAutomaton& a, unsigned k)
{
    if (k < 1 || k > 2) throw PreconditionError("explorability check supports 1 or 2 tokens");
    auto d = determinise_buchi(parity_to_buchi(a));
    return letter_game(a, d, k, nullptr);
}

namespace {

/* Transitive closure over at most 64 nodes; row[i] bit j iff a nonempty path i -> j. */
std::vector<std::uint64_t>
closure(std::vector<std::uint64_t> row)
{
    const auto n = row.size();
    for (std::size_t k = 0; k < n; k++) {
        for (std::size_t i = 0; i < n; i++) {
            if ((row[i] >> k) & 1) row[i] |= row[k];
        }
    }
    return row;
}

std::uint64_t
reach_from(const std::vector<std::uint64_t>& clos, std::size_t v)
{
    return clos[v] | (1ull << v);
}

} // namespace

std::vector<Player>
brute_solve_parity(const ParityGame& g)
{
    const auto n = g.num_vertices();
    if (n > 12) throw ResourceLimit("brute-force solving limited to 12 vertices");
    std::vector<std::uint32_t> eves;
    double total = 1;
    for (std::uint32_t v = 0; v < n; v++) {
        if (g.owner(v) == Player::eve) {
            eves.push_back(v);
            total *= static_cast<double>(g.out(v).size());
        }
    }
    if (total > (1 << 20)) throw ResourceLimit("too many positional strategies");
    std::vector<bool> eve_wins(n, false);
    std::vector<std::size_t> pick(eves.size(), 0);
    std::vector<bool> kept(g.num_edges());
    while (true) {
        for (std::uint32_t e = 0; e < g.num_edges(); e++) kept[e] = g.owner(g.from(e)) == Player::adam;
        for (std::size_t i = 0; i < eves.size(); i++) kept[g.out(eves[i])[pick[i]]] = true;
        std::vector<std::uint64_t> all(n, 0);
        for (std::uint32_t e = 0; e < g.num_edges(); e++) {
            if (kept[e]) all[g.from(e)] |= 1ull << g.to(e);
        }
        auto reach = closure(all);
        std::uint64_t bad = 0;
        for (unsigned o = 1; o <= g.max_priority(); o += 2) {
            std::vector<std::uint64_t> rows(n, 0);
            for (std::uint32_t e = 0; e < g.num_edges(); e++) {
                if (kept[e] && g.priority(e) >= o) rows[g.from(e)] |= 1ull << g.to(e);
            }
            auto c = closure(rows);
            for (std::uint32_t e = 0; e < g.num_edges(); e++) {
                if (!kept[e] || g.priority(e) != o) continue;
                auto x = g.from(e), y = g.to(e);
                if (x == y || ((c[y] >> x) & 1)) bad |= 1ull << x;
            }
        }
        for (std::uint32_t v = 0; v < n; v++) {
            if (!(reach_from(reach, v) & bad)) eve_wins[v] = true;
        }
        std::size_t i = 0;
        while (i < eves.size() && ++pick[i] == g.out(eves[i]).size()) pick[i++] = 0;
        if (i == eves.size()) break;
    }
    std::vector<Player> w(n);
    for (std::uint32_t v = 0; v < n; v++) w[v] = eve_wins[v] ? Player::eve : Player::adam;
    return w;
}

std::vector<Player>
brute_solve_muller(const MullerGame& m)
{
    const auto n = m.graph.n;
    if (n > 12) throw ResourceLimit("brute-force solving limited to 12 vertices");
    auto tree = build_zielonka_generic(m.colours, m.condition);
    const auto nb = tree.num_branches();
    const std::size_t nodes = static_cast<std::size_t>(n) * nb;
    if (nodes > 64) throw ResourceLimit("Muller memory product too large");
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t e = 0; e < m.graph.from.size(); e++) out[m.graph.from[e]].push_back(e);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;  // (vertex, branch) owned by Eve
    double total = 1;
    for (std::uint32_t v = 0; v < n; v++) {
        if (out[v].empty()) throw PreconditionError("Muller game vertex without moves");
        if (m.owner[v] != Player::eve) continue;
        for (std::uint32_t b = 0; b < nb; b++) {
            slots.emplace_back(v, b);
            total *= static_cast<double>(out[v].size());
        }
    }
    if (total > (1 << 20)) throw ResourceLimit("too many memory strategies");
    std::vector<std::uint32_t> losing_sets;
    for (std::uint32_t s = 1; s < (1u << m.colours); s++) {
        if (!m.condition(s)) losing_sets.push_back(s);
    }
    std::vector<bool> eve_wins(n, false);
    std::vector<std::size_t> pick(slots.size(), 0);
    std::vector<std::uint32_t> choice(nodes, NONE);
    while (true) {
        for (std::size_t i = 0; i < slots.size(); i++)
            choice[slots[i].first * nb + slots[i].second] = out[slots[i].first][pick[i]];
        // edges of the one-player graph: (from node, to node, colour)
        std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> edges;
        for (std::uint32_t v = 0; v < n; v++) {
            for (std::uint32_t b = 0; b < nb; b++) {
                for (auto e : out[v]) {
                    if (m.owner[v] == Player::eve && choice[v * nb + b] != e) continue;
                    auto b2 = tree.successor(b, m.colour[e]).first;
                    edges.emplace_back(v * nb + b, m.graph.to[e] * nb + b2, m.colour[e]);
                }
            }
        }
        std::vector<std::uint64_t> all(nodes, 0);
        for (auto [x, y, c] : edges) all[x] |= 1ull << y;
        auto reach = closure(all);
        std::uint64_t bad = 0;
        for (auto s : losing_sets) {
            std::vector<std::uint64_t> rows(nodes, 0);
            for (auto [x, y, c] : edges) {
                if ((s >> c) & 1) rows[x] |= 1ull << y;
            }
            auto cl = closure(rows);
            // group internal edges by the component of their source
            for (std::size_t x = 0; x < nodes; x++) {
                if (!((cl[x] >> x) & 1)) continue;
                std::uint32_t seen = 0;
                for (auto [u, w, c] : edges) {
                    if (!((s >> c) & 1)) continue;
                    bool u_in = u == x || (((cl[x] >> u) & 1) && ((cl[u] >> x) & 1));
                    bool w_in = w == x || (((cl[x] >> w) & 1) && ((cl[w] >> x) & 1));
                    if (u_in && w_in) seen |= 1u << c;
                }
                if (seen == s) bad |= 1ull << x;
            }
        }
        for (std::uint32_t v = 0; v < n; v++) {
            if (!(reach_from(reach, v * nb) & bad)) eve_wins[v] = true;
        }
        std::size_t i = 0;
        while (i < slots.size() && ++pick[i] == out[slots[i].first].size()) pick[i++] = 0;
        if (i == slots.size()) break;
    }
    std::vector<Player> w(n);
    for (std::uint32_t v = 0; v < n; v++) w[v] = eve_wins[v] ? Player::eve : Player::adam;
    return w;
}

std::vector<std::uint32_t>
brute_ranks(const ParityGame& g)
{
    const auto n = g.num_vertices();
    if (n > 10) throw ResourceLimit("brute-force ranks limited to 10 vertices");
    std::vector<std::uint32_t> rank(n, RANK_INF);
    std::vector<bool> prev(n, false);
    // Level b: priority 0 wins outright, priority 1 must land in level b - 1.
    for (std::uint32_t b = 0; b <= n; b++) {
        ParityGame h;
        for (std::uint32_t v = 0; v < n; v++) h.add_vertex(g.owner(v));
        auto win = h.add_vertex(Player::eve), lose = h.add_vertex(Player::adam);
        h.add_edge(win, win, 0);
        h.add_edge(lose, lose, 1);
        for (std::uint32_t e = 0; e < g.num_edges(); e++) {
            auto p = g.priority(e), to = g.to(e);
            h.add_edge(g.from(e), p == 0 ? win : p == 1 ? (prev[to] ? win : lose) : to, p == 0 ? 0 : p == 1 ? 2 : p);
        }
        h.finalise();
        auto w = brute_solve_parity(h);
        for (std::uint32_t v = 0; v < n; v++) {
            prev[v] = w[v] == Player::eve;
            if (prev[v] && rank[v] == RANK_INF) rank[v] = b;
        }
        if (std::find(rank.begin(), rank.end(), RANK_INF) == rank.end()) break;
    }
    return rank;
}

std::uint32_t
brute_rank(const ParityGame& g, std::uint32_t v)
{
    return brute_ranks(g)[v];
}

bool
brute_lasso_member(const ParityAutomaton& a, StateId q, const Lasso& w)
{
    if (w.cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    const auto u = w.prefix.size(), len = u + w.cycle.size();
    const auto n = a.num_states() * len;
    if (n > 64) throw ResourceLimit("unrolled run graph limited to 64 nodes");
    auto letter = [&](std::size_t i) { return i < u ? w.prefix[i] : w.cycle[i - u]; };
    auto next = [&](std::size_t i) { return i + 1 < len ? i + 1 : u; };
    std::vector<std::tuple<std::size_t, std::size_t, unsigned>> edges;
    for (StateId s = 0; s < a.num_states(); s++) {
        for (std::size_t i = 0; i < len; i++) {
            for (auto t : a.out(s, letter(i)))
                edges.emplace_back(s * len + i, a.transition(t).to * len + next(i), a.transition(t).priority);
        }
    }
    std::vector<std::uint64_t> all(n, 0);
    for (auto [x, y, p] : edges) all[x] |= 1ull << y;
    auto from_start = reach_from(closure(all), q * len);
    for (unsigned e = a.index_low() + a.index_low() % 2; e <= a.index_high(); e += 2) {
        std::vector<std::uint64_t> rows(n, 0);
        for (auto [x, y, p] : edges) {
            if (p >= e) rows[x] |= 1ull << y;
        }
        auto c = closure(rows);
        for (auto [x, y, p] : edges) {
            if (p == e && ((from_start >> x) & 1) && (x == y || ((c[y] >> x) & 1))) return true;
        }
    }
    return false;
}

bool
ge_reference(const ParityAutomaton& d, const LetterSplit& split)
{
    if (!d.is_deterministic()) throw PreconditionError("the specification automaton must be deterministic");
    if (split.size() != d.num_letters()) throw PreconditionError("letter split must cover the alphabet");
    std::vector<std::string> ins, outs;
    for (auto& [i, o] : split) {
        if (std::find(ins.begin(), ins.end(), i) == ins.end()) ins.push_back(i);
        if (std::find(outs.begin(), outs.end(), o) == outs.end()) outs.push_back(o);
    }
    std::vector<LetterId> letter(ins.size() * outs.size(), NONE);
    for (LetterId l = 0; l < split.size(); l++) {
        auto i = std::find(ins.begin(), ins.end(), split[l].first) - ins.begin();
        auto o = std::find(outs.begin(), outs.end(), split[l].second) - outs.begin();
        auto& slot = letter[static_cast<std::size_t>(i) * outs.size() + static_cast<std::size_t>(o)];
        if (slot != NONE) throw PreconditionError("letter split maps two letters to one pair");
        slot = l;
    }
    if (std::find(letter.begin(), letter.end(), NONE) != letter.end())
        throw PreconditionError("alphabet is not the full input-output product");
    AutomatonParts p;
    p.states = d.state_names();
    p.alphabet = ins;
    p.initial = d.initial();
    p.index_low = d.index_low();
    p.index_high = d.index_high();
    for (auto& t : d.transitions()) {
        auto i = std::find(ins.begin(), ins.end(), split[t.letter].first) - ins.begin();
        p.transitions.push_back({0, t.from, static_cast<LetterId>(i), t.priority, t.to});
    }
    ParityAutomaton proj(std::move(p));
    auto dp = determinise_buchi(parity_to_buchi(proj));

    const unsigned sa = even_shift(d), sd = even_shift(dp);
    const unsigned K = std::max({1u, d.index_high() - sa, dp.index_high() - sd});
    const auto& tree = letter_game_tree(K, 2);
    const unsigned mid = tree.height() + 1;
    const std::uint64_t nd = d.num_states(), np = dp.num_states(), nb = tree.num_branches();
    ParityGame g;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::array<std::uint32_t, 3>> pos;
    std::vector<std::uint32_t> queue;
    auto v1 = [&](std::uint32_t x, std::uint32_t s, std::uint32_t b) {
        std::uint64_t key = (x * np + s) * nb + b;
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        auto v = g.add_vertex(Player::adam);
        index.emplace(key, v);
        pos.resize(v + 1);
        pos[v] = {x, s, b};
        queue.push_back(v);
        return v;
    };
    auto root = v1(d.initial(), dp.initial(), 0);
    (void)nd;
    for (std::size_t qi = 0; qi < queue.size(); qi++) {
        const auto v = queue[qi];
        const auto [x, s, b] = pos[v];
        for (std::size_t i = 0; i < ins.size(); i++) {
            auto w = g.add_vertex(Player::eve);
            pos.resize(g.num_vertices());
            g.add_edge(v, w, mid);
            const auto& tp = dp.transition(dp.out(s, static_cast<LetterId>(i))[0]);
            for (std::size_t o = 0; o < outs.size(); o++) {
                const auto& td = d.transition(d.out(x, letter[i * outs.size() + o])[0]);
                std::vector<std::uint8_t> colour{static_cast<std::uint8_t>(td.priority - sa),
                                                 static_cast<std::uint8_t>(tp.priority - sd)};
                auto [b2, prio] = tree.successor(b, tree.colour_of(colour));
                g.add_edge(w, v1(td.to, tp.to, b2), prio);
            }
        }
    }
    g.finalise();
    return solve_parity(g).eve_wins(root);
}

} // namespace hdkit
