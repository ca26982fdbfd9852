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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "hdkit/graph.hpp"

namespace hdkit {

enum class Player : std::uint8_t { eve = 0, adam = 1 };

inline Player
opponent(Player p)
{
    return p == Player::eve ? Player::adam : Player::eve;
}

inline Player
parity_player(unsigned priority)
{
    return priority % 2 == 0 ? Player::eve : Player::adam;
}

/**
 * Two-player arena with priority-labelled edges, read min-even. Vertices and
 * edges are appended; finalise() builds adjacency and checks for dead ends.
 */
class ParityGame
{
  public:
    std::uint32_t add_vertex(Player owner);
    std::uint32_t add_edge(std::uint32_t from, std::uint32_t to, unsigned priority);
    void finalise();

    std::uint32_t num_vertices() const { return static_cast<std::uint32_t>(owner_.size()); }
    std::uint32_t num_edges() const { return static_cast<std::uint32_t>(graph_.from.size()); }
    Player owner(std::uint32_t v) const { return owner_[v]; }
    std::uint32_t from(std::uint32_t e) const { return graph_.from[e]; }
    std::uint32_t to(std::uint32_t e) const { return graph_.to[e]; }
    unsigned priority(std::uint32_t e) const { return priority_[e]; }
    const std::vector<unsigned>& priorities() const { return priority_; }
    const Digraph& graph() const { return graph_; }
    std::span<const std::uint32_t> out(std::uint32_t v) const;
    std::span<const std::uint32_t> in(std::uint32_t v) const;
    unsigned max_priority() const;
    bool finalised() const { return finalised_; }

    std::uint32_t initial = 0;

  private:
    std::vector<Player> owner_;
    Digraph graph_;
    std::vector<unsigned> priority_;
    Csr out_, in_;
    bool finalised_ = false;
};

/** One chosen edge per vertex (NONE where undefined). */
struct PositionalStrategy
{
    std::vector<std::uint32_t> choice;
};

struct ParitySolution
{
    std::vector<Player> winner;
    PositionalStrategy eve;
    PositionalStrategy adam;

    bool eve_wins(std::uint32_t v) const { return winner[v] == Player::eve; }
};

/**
 * Recursive attractor-based solver. Both strategies are total on their
 * owner's vertices. With verify set, each is checked against every
 * counter-play on its winning region (throws InternalError on failure).
 */
ParitySolution solve_parity(const ParityGame& g, bool verify = true);

/**
 * Whether the given Eve (or Adam) strategy wins from every vertex of region:
 * the region is closed under the strategy and no cycle in it has a least
 * priority of the opponent's parity.
 */
bool strategy_wins_on(const ParityGame& g, Player p, const PositionalStrategy& s, const std::vector<bool>& region);

inline constexpr std::uint32_t RANK_INF = 0xffffffffu;

struct RankTable
{
    std::vector<std::uint32_t> rank;  // RANK_INF for unbounded
    PositionalStrategy optimal;
};

/**
 * rank(v) is the least b such that Eve wins from v while never seeing more
 * than b priority-1 edges before the next priority-0 edge. Computed level by
 * level, each level a parity game with exits. The strategy plays the level
 * strategy of the current vertex's rank; it wins and never lets a rank
 * increase except through priority 0. Requires Eve to win from every vertex
 * (PreconditionError otherwise).
 */
RankTable compute_ranks(const ParityGame& g);

/** Checks the monotonicity of ranks along chosen Eve edges and all Adam edges. */
bool ranks_monotone(const ParityGame& g, const RankTable& r);

nlohmann::ordered_json game_to_json(const ParityGame& g);

} // namespace hdkit
