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

#include "hdkit/token_games.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "hdkit/errors.hpp"

namespace hdkit {

const ZielonkaTree&
token_tree(unsigned K, unsigned k)
{
    static std::mutex lock;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<ZielonkaTree>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto& slot = cache[{K, k}];
    if (!slot) slot = std::make_unique<ZielonkaTree>(build_zielonka_token(K, k));
    return *slot;
}

std::uint64_t
TokenProduct::key(StateId q, const StateId* p, std::uint32_t branch) const
{
    std::uint64_t x = q;
    for (unsigned i = 0; i < k; i++) x = x * radix[i + 1] + p[i];
    return x * radix[k + 1] + branch;
}

std::uint32_t
TokenProduct::find(StateId q, const std::vector<StateId>& p, std::uint32_t branch) const
{
    if (p.size() != k) return NONE;
    auto it = index.find(key(q, p.data(), branch));
    return it == index.end() ? NONE : it->second;
}

TokenProduct
build_token_product(const ParityAutomaton& eve, const std::vector<const ParityAutomaton*>& adam,
                    const std::vector<TokenConfig>& starts, ProductOptions options)
{
    const auto k = static_cast<unsigned>(adam.size());
    if (k < 1 || k > 3) throw PreconditionError("token games need 1 to 3 Adam tokens");
    if (options.simulation && k != 1) throw PreconditionError("the simulation game has one Adam token");
    unsigned low = eve.index_low(), high = eve.index_high();
    for (auto b : adam) {
        if (!same_alphabet(eve, *b)) throw PreconditionError("token game automata must share the alphabet");
        low = std::min(low, b->index_low());
        high = std::max(high, b->index_high());
    }
    TokenProduct t;
    t.k = k;
    t.shift = low - low % 2;
    t.simulation = options.simulation;
    const unsigned K = std::max(1u, high - t.shift);
    t.tree = &token_tree(K, k);
    const auto& tree = *t.tree;
    const unsigned mid = tree.height() + 1;
    HDKIT_ASSERT(mid > tree.max_prioritydepth(), "round priority does not exceed the tree priorities");
    const std::uint32_t nb = tree.num_branches();
    t.radix.push_back(eve.num_states());
    for (auto b : adam) t.radix.push_back(b->num_states());
    t.radix.push_back(nb);

    std::vector<std::uint32_t> queue;
    auto v1 = [&](StateId q, const StateId* p, std::uint32_t branch) {
        auto key = t.key(q, p, branch);
        auto it = t.index.find(key);
        if (it != t.index.end()) return it->second;
        auto v = t.game.add_vertex(Player::adam);
        ProductVertex info;
        info.q = q;
        std::copy(p, p + k, info.p.begin());
        info.branch = branch;
        t.info.push_back(info);
        t.index.emplace(key, v);
        t.v1s.push_back(v);
        queue.push_back(v);
        return v;
    };
    for (auto& s : starts) {
        if (s.adam.size() != k) throw PreconditionError("configuration has the wrong number of Adam tokens");
        if (s.eve >= eve.num_states()) throw PreconditionError("configuration state out of range");
        for (unsigned i = 0; i < k; i++) {
            if (s.adam[i] >= adam[i]->num_states()) throw PreconditionError("configuration state out of range");
        }
        if (options.all_branches) {
            for (std::uint32_t b = 0; b < nb; b++) v1(s.eve, s.adam.data(), b);
        } else {
            v1(s.eve, s.adam.data(), 0);
        }
    }
    auto colour = [&](unsigned ce, const unsigned* ca) {
        std::vector<std::uint8_t> c(k + 1);
        c[0] = static_cast<std::uint8_t>(ce - t.shift);
        for (unsigned i = 0; i < k; i++) c[i + 1] = static_cast<std::uint8_t>(ca[i] - t.shift);
        return tree.colour_of(c);
    };
    for (std::size_t qi = 0; qi < queue.size(); qi++) {
        const auto v = queue[qi];
        const auto cur = t.info[v];
        for (LetterId a = 0; a < eve.num_letters(); a++) {
            ProductVertex i2 = cur;
            i2.kind = 2;
            i2.letter = a;
            auto v2 = t.game.add_vertex(options.simulation ? Player::adam : Player::eve);
            t.info.push_back(i2);
            t.game.add_edge(v, v2, mid);
            if (options.simulation) {
                for (auto tb : adam[0]->out(cur.p[0], a)) {
                    ProductVertex i3 = i2;
                    i3.kind = 3;
                    i3.adam_t = tb;
                    auto v3 = t.game.add_vertex(Player::eve);
                    t.info.push_back(i3);
                    t.game.add_edge(v2, v3, mid);
                    const auto& xb = adam[0]->transition(tb);
                    for (auto ta : eve.out(cur.q, a)) {
                        const auto& xa = eve.transition(ta);
                        auto [b2, d] = tree.successor(cur.branch, colour(xa.priority, &xb.priority));
                        auto target = v1(xa.to, &xb.to, b2);
                        t.game.add_edge(v3, target, d);
                    }
                }
                continue;
            }
            for (auto te : eve.out(cur.q, a)) {
                ProductVertex i3 = i2;
                i3.kind = 3;
                i3.eve_t = te;
                auto v3 = t.game.add_vertex(Player::adam);
                t.info.push_back(i3);
                t.game.add_edge(v2, v3, mid);
                const auto& xe = eve.transition(te);
                std::array<std::span<const TransId>, 3> rows;
                for (unsigned i = 0; i < k; i++) rows[i] = adam[i]->out(cur.p[i], a);
                std::array<std::size_t, 3> pick{0, 0, 0};
                while (true) {
                    std::array<unsigned, 3> prio{};
                    std::array<StateId, 3> to{};
                    for (unsigned i = 0; i < k; i++) {
                        const auto& x = adam[i]->transition(rows[i][pick[i]]);
                        prio[i] = x.priority;
                        to[i] = x.to;
                    }
                    auto [b2, d] = tree.successor(cur.branch, colour(xe.priority, prio.data()));
                    auto target = v1(xe.to, to.data(), b2);
                    t.game.add_edge(v3, target, d);
                    unsigned i = 0;
                    while (i < k && ++pick[i] == rows[i].size()) pick[i++] = 0;
                    if (i == k) break;
                }
            }
        }
    }
    t.game.finalise();
    if (!t.v1s.empty()) t.game.initial = t.v1s[0];
    return t;
}

TokenGameResult
wins_tokens(const ParityAutomaton& eve, StateId q, const std::vector<const ParityAutomaton*>& adam,
            const std::vector<StateId>& p)
{
    TokenGameResult r;
    r.product = build_token_product(eve, adam, {TokenConfig{q, p}}, {});
    r.solution = solve_parity(r.product.game);
    r.start = r.product.find(q, p, 0);
    r.winner = r.solution.winner[r.start];
    return r;
}

TokenGameResult
wins_gk(const ParityAutomaton& a, const TokenConfig& cfg)
{
    std::vector<const ParityAutomaton*> adam(cfg.adam.size(), &a);
    return wins_tokens(a, cfg.eve, adam, cfg.adam);
}

std::vector<TokenConfig>
weakly_coreachable_tuples(const ParityAutomaton& a, unsigned k)
{
    auto cr = coreachability(a);
    std::vector<TokenConfig> out;
    for (auto& cls : cr.classes()) {
        const auto m = cls.size();
        std::size_t total = 1;
        for (unsigned i = 0; i <= k; i++) total *= m;
        for (std::size_t x = 0; x < total; x++) {
            TokenConfig c;
            auto y = x;
            std::vector<StateId> digits(k + 1);
            for (unsigned i = k + 1; i-- > 0;) {
                digits[i] = cls[y % m];
                y /= m;
            }
            c.eve = digits[0];
            c.adam.assign(digits.begin() + 1, digits.end());
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool
wins_everywhere(const ParityAutomaton& a, unsigned k)
{
    std::vector<const ParityAutomaton*> adam(k, &a);
    auto product = build_token_product(a, adam, weakly_coreachable_tuples(a, k), {});
    auto sol = solve_parity(product.game);
    for (auto v : product.v1s) {
        if (!sol.eve_wins(v)) return false;
    }
    return true;
}

TokenGameResult
simulates(const ParityAutomaton& a, StateId p, const ParityAutomaton& b, StateId q)
{
    TokenGameResult r;
    ProductOptions o;
    o.simulation = true;
    r.product = build_token_product(a, {&b}, {TokenConfig{p, {q}}}, o);
    r.solution = solve_parity(r.product.game);
    r.start = r.product.find(p, {q}, 0);
    r.winner = r.solution.winner[r.start];
    return r;
}

TokenGameResult
build_simulation(const ParityAutomaton& a, const ParityAutomaton& b)
{
    return simulates(a, a.initial(), b, b.initial());
}

bool
simulation_equivalent(const ParityAutomaton& a, const ParityAutomaton& b)
{
    return build_simulation(a, b).winner == Player::eve && build_simulation(b, a).winner == Player::eve;
}

BuchiGame
build_g1_buchi(const ParityAutomaton& a)
{
    if (a.index_low() != 0 || a.index_high() > 1) throw PreconditionError("the Buchi game needs index [0,1]");
    auto cr = coreachability(a);
    BuchiGame g;
    g.n = a.num_states();
    const auto n = g.n, letters = a.num_letters();
    g.v1.assign(n * n, NONE);
    for (StateId q = 0; q < n; q++) {
        for (StateId p = 0; p < n; p++) {
            if (!cr.weakly_coreachable(q, p)) continue;
            g.v1[q * n + p] = g.game.add_vertex(Player::adam);
            ProductVertex x;
            x.q = q;
            x.p[0] = p;
            g.info.push_back(x);
        }
    }
    std::unordered_map<std::uint64_t, std::uint32_t> v3;
    std::vector<std::uint32_t> v3_list;
    for (StateId q = 0; q < n; q++) {
        for (StateId p = 0; p < n; p++) {
            auto v = g.at(q, p);
            if (v == NONE) continue;
            for (LetterId x = 0; x < letters; x++) {
                auto v2 = g.game.add_vertex(Player::eve);
                ProductVertex i2 = g.info[v];
                i2.kind = 2;
                i2.letter = x;
                g.info.push_back(i2);
                g.game.add_edge(v, v2, 2);
                for (auto t : a.out(q, x)) {
                    const auto& d = a.transition(t);
                    std::uint64_t key = (static_cast<std::uint64_t>(d.to) * n + p) * letters + x;
                    auto it = v3.find(key);
                    std::uint32_t w;
                    if (it == v3.end()) {
                        w = g.game.add_vertex(Player::adam);
                        ProductVertex i3;
                        i3.kind = 3;
                        i3.q = d.to;
                        i3.p[0] = p;
                        i3.letter = x;
                        g.info.push_back(i3);
                        v3.emplace(key, w);
                        v3_list.push_back(w);
                    } else {
                        w = it->second;
                    }
                    g.game.add_edge(v2, w, d.priority == 0 ? 0 : 2);
                }
            }
        }
    }
    for (auto w : v3_list) {
        const auto x = g.info[w];
        for (auto t : a.out(x.p[0], x.letter)) {
            const auto& d = a.transition(t);
            auto target = g.at(x.q, d.to);
            HDKIT_ASSERT(target != NONE, "weak coreachability is not successor-closed");
            g.game.add_edge(w, target, d.priority == 0 ? 1 : 2);
        }
    }
    g.game.finalise();
    return g;
}

std::vector<std::uint32_t>
buchi_opt(const BuchiGame& g, const RankTable& r)
{
    std::vector<std::uint32_t> opt(g.n, NONE);
    for (StateId q = 0; q < g.n; q++) {
        for (StateId p = 0; p < g.n; p++) {
            auto v = g.at(q, p);
            if (v != NONE) opt[q] = std::min(opt[q], r.rank[v]);
        }
    }
    return opt;
}

TokenProduct
build_g2_product(const ParityAutomaton& a)
{
    ProductOptions o;
    o.all_branches = true;
    return build_token_product(a, {&a, &a}, weakly_coreachable_tuples(a, 2), o);
}

bool
is_right_branch(const ZielonkaTree& t, std::uint32_t b)
{
    return t.branch_has_corner(b, std::vector<std::uint8_t>(t.box_dims(), 1));
}

G2Analysis
analyse_g2(const ParityAutomaton& a)
{
    G2Analysis g;
    g.product = build_g2_product(a);
    g.solution = solve_parity(g.product.game);
    for (auto w : g.solution.winner) {
        if (w != Player::eve) throw PreconditionError("Eve does not win the 2-token game from everywhere");
    }
    g.ranks = compute_ranks(g.product.game);
    const auto n = a.num_states();
    auto& info = g.info;
    info.opt.assign(n, NONE);
    info.witness.assign(n, {NONE, NONE, NONE});
    info.right.assign(n, false);
    std::vector<std::tuple<std::uint32_t, bool, StateId, StateId, std::uint32_t>> best(
        n, {NONE, true, NONE, NONE, NONE});
    for (auto v : g.product.v1s) {
        const auto& x = g.product.info[v];
        std::tuple<std::uint32_t, bool, StateId, StateId, std::uint32_t> cand{
            g.ranks.rank[v], !is_right_branch(*g.product.tree, x.branch), x.p[0], x.p[1], x.branch};
        if (cand < best[x.q]) best[x.q] = cand;
    }
    for (StateId q = 0; q < n; q++) {
        auto [r, left, p1, p2, b] = best[q];
        info.opt[q] = r;
        info.witness[q] = {p1, p2, b};
        info.right[q] = r == 0 && !left;
    }
    return g;
}

StateRankInfo
state_rank_info(const ParityAutomaton& a)
{
    return analyse_g2(a).info;
}

} // namespace hdkit
