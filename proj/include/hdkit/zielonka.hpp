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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hdkit/game.hpp"

namespace hdkit {

/** Colour-set membership; bit i of the mask stands for colour i. */
using MullerCondition = std::function<bool(std::uint32_t)>;

/** Membership of a box, given its corner (the coordinate-wise minima). */
using CornerCondition = std::function<bool(const std::vector<std::uint8_t>&)>;

struct ZielonkaNode
{
    std::uint32_t parent = NONE;
    std::vector<std::uint32_t> children;
    std::uint32_t depth = 0;
    unsigned prioritydepth = 0;
    bool accepting = false;
    std::uint32_t mask = 0;            // explicit trees
    std::vector<std::uint8_t> corner;  // box trees: [corner_i, K] per coordinate
};

/**
 * Ordered Zielonka tree, either over explicit colours 0..n-1 or over boxes
 * of [0,K]^d. Box colours are encoded mixed-radix, coordinate 0 lowest.
 * Branches are numbered left to right; branch 0 is the leftmost.
 */
class ZielonkaTree
{
  public:
    bool is_box() const { return box_; }
    std::uint32_t num_colours() const { return ncolours_; }
    unsigned box_bound() const { return bound_; }
    unsigned box_dims() const { return dims_; }

    const std::vector<ZielonkaNode>& nodes() const { return nodes_; }
    const ZielonkaNode& node(std::uint32_t i) const { return nodes_[i]; }
    std::uint32_t num_branches() const { return static_cast<std::uint32_t>(branches_.size()); }
    const std::vector<std::uint32_t>& branch(std::uint32_t b) const { return branches_[b]; }
    /** Edge count from the root to the deepest leaf. */
    std::uint32_t height() const { return height_; }
    unsigned max_prioritydepth() const;

    bool contains(std::uint32_t node, std::uint32_t colour) const;
    std::uint32_t leftmost_branch_through(std::uint32_t node) const;
    /** Whether branch b passes through the box with the given corner. */
    bool branch_has_corner(std::uint32_t b, const std::vector<std::uint8_t>& corner) const;

    std::uint32_t colour_of(const std::vector<std::uint8_t>& coords) const;
    std::vector<std::uint8_t> coords_of(std::uint32_t colour) const;

    /** Successor branch and emitted priority; O(1) table lookup. */
    std::pair<std::uint32_t, unsigned> successor(std::uint32_t b, std::uint32_t colour) const
    {
        auto& s = table_[b * ncolours_ + colour];
        return {s.first, s.second};
    }

    /** Same result computed straight from the tree structure. */
    std::pair<std::uint32_t, unsigned> successor_slow(std::uint32_t b, std::uint32_t colour) const;

    std::vector<std::uint32_t> colour_set(std::uint32_t node) const;
    std::string label_string(std::uint32_t node) const;

    /** Order-insensitive structural form over colour sets, for comparisons. */
    std::string canonical_unordered() const;
    /** Order-sensitive structural form. */
    std::string canonical_ordered() const;

    nlohmann::ordered_json to_json() const;

  private:
    friend ZielonkaTree build_zielonka_generic(std::uint32_t, const MullerCondition&);
    friend ZielonkaTree build_zielonka_token(unsigned, unsigned);
    friend ZielonkaTree build_zielonka_boxes(unsigned, unsigned, const CornerCondition&);

    std::uint32_t add_node(std::uint32_t parent, bool accepting);
    void finish();
    std::string canonical(std::uint32_t node, bool ordered) const;

    bool box_ = false;
    std::uint32_t ncolours_ = 0;
    unsigned bound_ = 0;
    unsigned dims_ = 0;
    std::vector<ZielonkaNode> nodes_;
    std::vector<std::vector<std::uint32_t>> branches_;
    std::vector<std::uint32_t> first_branch_;  // node -> leftmost branch below it
    std::uint32_t height_ = 0;
    std::vector<std::pair<std::uint32_t, unsigned>> table_;
};

/**
 * Exact Zielonka tree by subset search. Children are the maximal proper
 * nonempty subsets with flipped membership, ordered by their sorted colour
 * lists. At most 12 colours (ResourceLimit otherwise).
 */
ZielonkaTree build_zielonka_generic(std::uint32_t colours, const MullerCondition& condition);

/**
 * Tree of the k-token condition over [0,K]^(k+1): the least Eve priority is
 * even or every least Adam priority is odd. Children are generated
 * structurally; the Eve-raising child comes first. Needs K >= 1, 1 <= k <= 3.
 */
ZielonkaTree build_zielonka_token(unsigned K, unsigned k);

/**
 * Tree for any condition that depends only on per-coordinate minima over
 * [0,K]^dims. Every maximal flipped subset is then a box, so the search
 * runs over corners. Children are ordered by descending corner.
 */
ZielonkaTree build_zielonka_boxes(unsigned K, unsigned dims, const CornerCondition& condition);

/** The k-token condition on explicit colours (box colour encoding). */
MullerCondition token_condition(unsigned K, unsigned k);

bool token_corner_accepting(const std::vector<std::uint8_t>& corner);

/** Least priority seen infinitely often by the branch run on u.v^omega. */
unsigned dcf_lasso_priority(const ZielonkaTree& t, const std::vector<std::uint32_t>& prefix,
                            const std::vector<std::uint32_t>& cycle);

/** Arena with colour-labelled edges and a Muller winning condition for Eve. */
struct MullerGame
{
    std::vector<Player> owner;
    Digraph graph;
    std::vector<std::uint32_t> colour;
    std::uint32_t colours = 0;
    MullerCondition condition;
    std::uint32_t initial = 0;

    std::uint32_t add_vertex(Player p)
    {
        owner.push_back(p);
        graph.n = static_cast<std::uint32_t>(owner.size());
        return graph.n - 1;
    }
    void add_edge(std::uint32_t u, std::uint32_t v, std::uint32_t c)
    {
        graph.add_edge(u, v);
        colour.push_back(c);
    }
};

/** Product vertex (v, b) has id v * branches + b; initial is (initial, 0). */
ParityGame muller_to_parity(const MullerGame& m, const ZielonkaTree& t);

} // namespace hdkit
