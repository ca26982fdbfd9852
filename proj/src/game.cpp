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

#include "hdkit/game.hpp"

#include <algorithm>
#include <string>

#include "hdkit/errors.hpp"

namespace hdkit {

std::uint32_t
ParityGame::add_vertex(Player owner)
{
    finalised_ = false;
    owner_.push_back(owner);
    graph_.n = static_cast<std::uint32_t>(owner_.size());
    return graph_.n - 1;
}

std::uint32_t
ParityGame::add_edge(std::uint32_t from, std::uint32_t to, unsigned priority)
{
    finalised_ = false;
    priority_.push_back(priority);
    return graph_.add_edge(from, to);
}

void
ParityGame::finalise()
{
    out_ = out_csr(graph_);
    in_ = in_csr(graph_);
    for (std::uint32_t v = 0; v < num_vertices(); v++) {
        if (out_.offset[v] == out_.offset[v + 1])
            throw InternalError("game vertex " + std::to_string(v) + " has no outgoing edge");
    }
    finalised_ = true;
}

std::span<const std::uint32_t>
ParityGame::out(std::uint32_t v) const
{
    return {out_.edge.data() + out_.offset[v], out_.edge.data() + out_.offset[v + 1]};
}

std::span<const std::uint32_t>
ParityGame::in(std::uint32_t v) const
{
    return {in_.edge.data() + in_.offset[v], in_.edge.data() + in_.offset[v + 1]};
}

unsigned
ParityGame::max_priority() const
{
    unsigned m = 0;
    for (auto p : priority_) m = std::max(m, p);
    return m;
}

namespace {

class Solver
{
  public:
    explicit Solver(const ParityGame& g)
      : g_(g), n_(g.num_vertices()), winner_(n_, Player::eve), choice_(n_, NONE), count_(n_, 0)
    {
    }

    void run()
    {
        std::vector<std::uint32_t> all(n_);
        for (std::uint32_t v = 0; v < n_; v++) all[v] = v;
        solve(std::move(all), 0);
        for (std::uint32_t v = 0; v < n_; v++) {
            if (choice_[v] == NONE) choice_[v] = g_.out(v)[0];
        }
    }

    ParitySolution result() const
    {
        ParitySolution s;
        s.winner = winner_;
        s.eve.choice.assign(n_, NONE);
        s.adam.choice.assign(n_, NONE);
        for (std::uint32_t v = 0; v < n_; v++) {
            (g_.owner(v) == Player::eve ? s.eve : s.adam).choice[v] = choice_[v];
        }
        return s;
    }

  private:
    bool allowed(const std::vector<char>& sub, std::uint32_t e, unsigned minp) const
    {
        return sub[g_.from(e)] && sub[g_.to(e)] && g_.priority(e) >= minp;
    }

    /*
     * Attractor for pl inside sub, to the target vertices and (when seed >= 0)
     * to the edges of priority seed. Sets in[] and the attracting choices.
     */
    std::vector<std::uint32_t> attract(const std::vector<char>& sub, const std::vector<std::uint32_t>& verts,
                                       unsigned minp, Player pl, const std::vector<std::uint32_t>& target,
                                       long seed, std::vector<char>& in)
    {
        std::vector<std::uint32_t> out;
        for (auto v : target) {
            in[v] = 1;
            out.push_back(v);
        }
        for (auto v : verts) {
            if (in[v]) continue;
            std::uint32_t cnt = 0, seed_edge = NONE;
            for (auto e : g_.out(v)) {
                if (!allowed(sub, e, minp)) continue;
                if (seed >= 0 && g_.priority(e) == static_cast<unsigned>(seed)) {
                    if (seed_edge == NONE) seed_edge = e;
                } else {
                    cnt++;
                }
            }
            count_[v] = cnt;
            if (seed >= 0) {
                if (g_.owner(v) == pl && seed_edge != NONE) {
                    in[v] = 1;
                    choice_[v] = seed_edge;
                    out.push_back(v);
                } else if (g_.owner(v) != pl && cnt == 0) {
                    in[v] = 1;
                    out.push_back(v);
                }
            }
        }
        for (std::size_t i = 0; i < out.size(); i++) {
            auto v = out[i];
            for (auto e : g_.in(v)) {
                auto u = g_.from(e);
                if (!sub[u] || in[u] || g_.priority(e) < minp) continue;
                if (seed >= 0 && g_.priority(e) == static_cast<unsigned>(seed)) continue;
                if (g_.owner(u) == pl) {
                    in[u] = 1;
                    choice_[u] = e;
                    out.push_back(u);
                } else if (--count_[u] == 0) {
                    in[u] = 1;
                    out.push_back(u);
                }
            }
        }
        return out;
    }

    void solve(std::vector<std::uint32_t> verts, unsigned minp)
    {
        std::vector<char> sub(n_, 0);
        for (auto v : verts) sub[v] = 1;
        while (!verts.empty()) {
            unsigned p = ~0u;
            for (auto v : verts) {
                for (auto e : g_.out(v)) {
                    if (allowed(sub, e, minp)) p = std::min(p, g_.priority(e));
                }
            }
            HDKIT_ASSERT(p != ~0u, "subgame without edges");
            Player a = parity_player(p);
            std::vector<char> in_a(n_, 0);
            attract(sub, verts, minp, a, {}, static_cast<long>(p), in_a);
            std::vector<std::uint32_t> rest;
            for (auto v : verts) {
                if (!in_a[v]) rest.push_back(v);
            }
            std::vector<std::uint32_t> lost;
            if (!rest.empty()) {
                solve(rest, p + 1);
                for (auto v : rest) {
                    if (winner_[v] != a) lost.push_back(v);
                }
            }
            if (lost.empty()) {
                for (auto v : verts) winner_[v] = a;
                return;
            }
            std::vector<char> in_b(n_, 0);
            auto b = attract(sub, verts, minp, opponent(a), lost, -1, in_b);
            for (auto v : b) {
                winner_[v] = opponent(a);
                sub[v] = 0;
            }
            std::erase_if(verts, [&](std::uint32_t v) { return in_b[v] != 0; });
        }
    }

    const ParityGame& g_;
    std::uint32_t n_;
    std::vector<Player> winner_;
    std::vector<std::uint32_t> choice_;
    std::vector<std::uint32_t> count_;
};

} // namespace

bool
strategy_wins_on(const ParityGame& g, Player p, const PositionalStrategy& s, const std::vector<bool>& region)
{
    std::vector<bool> keep(g.num_edges(), false);
    std::vector<std::uint32_t> sources;
    for (std::uint32_t v = 0; v < g.num_vertices(); v++) {
        if (!region[v]) continue;
        sources.push_back(v);
        if (g.owner(v) == p) {
            auto e = s.choice[v];
            if (e == NONE || e >= g.num_edges() || g.from(e) != v || !region[g.to(e)]) return false;
            keep[e] = true;
        } else {
            for (auto e : g.out(v)) {
                if (!region[g.to(e)]) return false;
                keep[e] = true;
            }
        }
    }
    unsigned bad = p == Player::eve ? 1 : 0;
    return !has_cycle_with_min_parity(g.graph(), g.priorities(), sources, bad, keep);
}

ParitySolution
solve_parity(const ParityGame& g, bool verify)
{
    HDKIT_ASSERT(g.finalised(), "solve_parity on a game that was not finalised");
    Solver solver(g);
    solver.run();
    auto s = solver.result();
    if (verify) {
        std::vector<bool> we(g.num_vertices()), wa(g.num_vertices());
        for (std::uint32_t v = 0; v < g.num_vertices(); v++) {
            we[v] = s.winner[v] == Player::eve;
            wa[v] = !we[v];
        }
        HDKIT_ASSERT(strategy_wins_on(g, Player::eve, s.eve, we), "Eve strategy fails verification");
        HDKIT_ASSERT(strategy_wins_on(g, Player::adam, s.adam, wa), "Adam strategy fails verification");
    }
    return s;
}

namespace {

// Copy of g where priority-0 edges exit to a winning sink and priority-1
// edges exit to the winning sink if their target is in budget, else to a
// losing one. Edge ids of g are preserved.
ParityGame
budget_game(const ParityGame& g, const std::vector<bool>& budget)
{
    ParityGame h;
    const auto n = g.num_vertices();
    for (std::uint32_t v = 0; v < n; v++) h.add_vertex(g.owner(v));
    auto win = h.add_vertex(Player::eve), lose = h.add_vertex(Player::eve);
    for (std::uint32_t e = 0; e < g.num_edges(); e++) {
        auto p = g.priority(e);
        if (p == 0) h.add_edge(g.from(e), win, 0);
        else if (p == 1) h.add_edge(g.from(e), budget[g.to(e)] ? win : lose, 0);
        else h.add_edge(g.from(e), g.to(e), p);
    }
    h.add_edge(win, win, 0);
    h.add_edge(lose, lose, 1);
    h.finalise();
    return h;
}

} // namespace

bool
ranks_monotone(const ParityGame& g, const RankTable& r)
{
    for (std::uint32_t e = 0; e < g.num_edges(); e++) {
        auto u = g.from(e), v = g.to(e);
        if (g.owner(u) == Player::eve && r.optimal.choice[u] != e) continue;
        auto p = g.priority(e);
        if (p == 0) continue;
        // RANK_INF compares as the largest value
        if (r.rank[u] < r.rank[v]) return false;
        if (p == 1 && r.rank[u] == r.rank[v]) return false;
    }
    return true;
}

RankTable
compute_ranks(const ParityGame& g)
{
    auto sol = solve_parity(g);
    for (auto w : sol.winner) {
        if (w != Player::eve) throw PreconditionError("ranks need Eve to win from every vertex");
    }
    const auto n = g.num_vertices();
    RankTable t;
    t.rank.assign(n, RANK_INF);
    t.optimal.choice.assign(n, NONE);
    // Level b: Eve wins while seeing at most b priority-1 edges before each priority-0 edge.
    std::vector<bool> prev(n, false);
    std::uint32_t left = n;
    for (std::uint32_t b = 0; left > 0; b++) {
        HDKIT_ASSERT(b <= n, "unbounded rank although Eve wins everywhere");
        auto h = budget_game(g, prev);
        auto hs = solve_parity(h, false);
        std::vector<bool> cur(n, false);
        for (std::uint32_t v = 0; v < n; v++) {
            cur[v] = hs.eve_wins(v);
            if (!cur[v] || t.rank[v] != RANK_INF) continue;
            t.rank[v] = b;
            left--;
            if (g.owner(v) == Player::eve) t.optimal.choice[v] = hs.eve.choice[v];
        }
        prev = std::move(cur);
    }
    HDKIT_ASSERT(strategy_wins_on(g, Player::eve, t.optimal, std::vector<bool>(n, true)),
                 "optimal strategy is not winning");
    HDKIT_ASSERT(ranks_monotone(g, t), "ranks are not monotone along the optimal strategy");
    return t;
}

nlohmann::ordered_json
game_to_json(const ParityGame& g)
{
    nlohmann::ordered_json j;
    auto owners = nlohmann::ordered_json::array();
    for (std::uint32_t v = 0; v < g.num_vertices(); v++) owners.push_back(g.owner(v) == Player::eve ? 0 : 1);
    auto edges = nlohmann::ordered_json::array();
    for (std::uint32_t e = 0; e < g.num_edges(); e++) edges.push_back({g.from(e), g.to(e), g.priority(e)});
    j["owners"] = std::move(owners);
    j["edges"] = std::move(edges);
    j["initial"] = g.initial;
    return j;
}

} // namespace hdkit
