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

#include "hdkit/zielonka.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "hdkit/errors.hpp"

namespace hdkit {

std::uint32_t
ZielonkaTree::add_node(std::uint32_t parent, bool accepting)
{
    ZielonkaNode n;
    n.parent = parent;
    n.accepting = accepting;
    if (parent != NONE) n.depth = nodes_[parent].depth + 1;
    nodes_.push_back(std::move(n));
    auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
    if (parent != NONE) nodes_[parent].children.push_back(id);
    return id;
}

void
ZielonkaTree::finish()
{
    const unsigned offset = nodes_[0].accepting ? 0 : 1;
    first_branch_.assign(nodes_.size(), NONE);
    branches_.clear();
    height_ = 0;
    // children are created after their parent, so ids are topologically sorted
    std::vector<std::uint32_t> path;
    std::vector<std::uint32_t> next(nodes_.size(), 0);
    path.push_back(0);
    while (!path.empty()) {
        auto v = path.back();
        auto& n = nodes_[v];
        n.prioritydepth = n.depth + offset;
        if (first_branch_[v] == NONE) first_branch_[v] = static_cast<std::uint32_t>(branches_.size());
        if (n.children.empty()) {
            branches_.push_back(path);
            height_ = std::max(height_, n.depth);
            path.pop_back();
            continue;
        }
        if (next[v] < n.children.size()) {
            path.push_back(n.children[next[v]++]);
        } else {
            path.pop_back();
        }
    }
    table_.assign(static_cast<std::size_t>(branches_.size()) * ncolours_, {0, 0});
    for (std::uint32_t b = 0; b < branches_.size(); b++) {
        for (std::uint32_t c = 0; c < ncolours_; c++) table_[b * ncolours_ + c] = successor_slow(b, c);
    }
}

unsigned
ZielonkaTree::max_prioritydepth() const
{
    unsigned m = 0;
    for (auto& n : nodes_) m = std::max(m, n.prioritydepth);
    return m;
}

std::vector<std::uint8_t>
ZielonkaTree::coords_of(std::uint32_t colour) const
{
    std::vector<std::uint8_t> c(dims_);
    for (unsigned i = 0; i < dims_; i++) {
        c[i] = static_cast<std::uint8_t>(colour % (bound_ + 1));
        colour /= bound_ + 1;
    }
    return c;
}

std::uint32_t
ZielonkaTree::colour_of(const std::vector<std::uint8_t>& coords) const
{
    std::uint32_t c = 0;
    for (unsigned i = dims_; i-- > 0;) c = c * (bound_ + 1) + coords[i];
    return c;
}

bool
ZielonkaTree::contains(std::uint32_t node, std::uint32_t colour) const
{
    const auto& n = nodes_[node];
    if (!box_) return (n.mask >> colour) & 1u;
    for (unsigned i = 0; i < dims_; i++) {
        if (colour % (bound_ + 1) < n.corner[i]) return false;
        colour /= bound_ + 1;
    }
    return true;
}

std::uint32_t
ZielonkaTree::leftmost_branch_through(std::uint32_t node) const
{
    return first_branch_[node];
}

bool
ZielonkaTree::branch_has_corner(std::uint32_t b, const std::vector<std::uint8_t>& corner) const
{
    for (auto v : branches_[b]) {
        if (nodes_[v].corner == corner) return true;
    }
    return false;
}

std::pair<std::uint32_t, unsigned>
ZielonkaTree::successor_slow(std::uint32_t b, std::uint32_t colour) const
{
    if (colour >= ncolours_) throw PreconditionError("colour outside the root label");
    const auto& path = branches_[b];
    std::size_t i = path.size() - 1;
    while (!contains(path[i], colour)) i--;
    const auto& support = nodes_[path[i]];
    if (i + 1 == path.size()) return {b, support.prioritydepth};
    const auto& sib = support.children;
    auto at = std::find(sib.begin(), sib.end(), path[i + 1]) - sib.begin();
    auto next = sib[(static_cast<std::size_t>(at) + 1) % sib.size()];
    return {first_branch_[next], support.prioritydepth};
}

std::vector<std::uint32_t>
ZielonkaTree::colour_set(std::uint32_t node) const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < ncolours_; c++) {
        if (contains(node, c)) out.push_back(c);
    }
    return out;
}

std::string
ZielonkaTree::label_string(std::uint32_t node) const
{
    std::string s;
    if (box_) {
        s = "(";
        for (std::size_t i = 0; i < nodes_[node].corner.size(); i++)
            s += (i ? "," : "") + std::to_string(nodes_[node].corner[i]);
        return s + ")";
    }
    s = "{";
    bool first = true;
    for (auto c : colour_set(node)) {
        s += (first ? "" : ",") + std::to_string(c);
        first = false;
    }
    return s + "}";
}

std::string
ZielonkaTree::canonical(std::uint32_t node, bool ordered) const
{
    std::string s = "{";
    bool first = true;
    for (auto c : colour_set(node)) {
        s += (first ? "" : ",") + std::to_string(c);
        first = false;
    }
    s += "}";
    std::vector<std::string> kids;
    for (auto c : nodes_[node].children) kids.push_back(canonical(c, ordered));
    if (!ordered) std::sort(kids.begin(), kids.end());
    if (!kids.empty()) {
        s += "[";
        for (std::size_t i = 0; i < kids.size(); i++) s += (i ? ";" : "") + kids[i];
        s += "]";
    }
    return s;
}

std::string
ZielonkaTree::canonical_unordered() const
{
    return canonical(0, false);
}

std::string
ZielonkaTree::canonical_ordered() const
{
    return canonical(0, true);
}

nlohmann::ordered_json
ZielonkaTree::to_json() const
{
    nlohmann::ordered_json j;
    auto nodes = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < nodes_.size(); i++) {
        nlohmann::ordered_json n;
        if (box_) n["corner"] = nodes_[i].corner;
        else n["label"] = colour_set(i);
        n["children"] = nodes_[i].children;
        n["prioritydepth"] = nodes_[i].prioritydepth;
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    j["branches"] = num_branches();
    j["height"] = height_;
    return j;
}

namespace {

std::vector<std::uint32_t>
bits(std::uint32_t mask)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; mask; i++, mask >>= 1) {
        if (mask & 1) out.push_back(i);
    }
    return out;
}

bool
corner_leq(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
{
    for (std::size_t i = 0; i < a.size(); i++) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

/* Keeps the corners not dominated (as boxes: not contained) by another one. */
std::vector<std::vector<std::uint8_t>>
minimal_corners(std::vector<std::vector<std::uint8_t>> cs)
{
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<std::vector<std::uint8_t>> out;
    for (auto& y : cs) {
        bool dominated = false;
        for (auto& z : cs) {
            if (z != y && corner_leq(z, y)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(y);
    }
    return out;
}

} // namespace

ZielonkaTree
build_zielonka_generic(std::uint32_t colours, const MullerCondition& condition)
{
    if (colours == 0) throw PreconditionError("Zielonka tree needs at least one colour");
    if (colours > 12) throw ResourceLimit("generic Zielonka tree limited to 12 colours");
    ZielonkaTree t;
    t.ncolours_ = colours;
    const std::uint32_t full = (1u << colours) - 1;
    auto root = t.add_node(NONE, condition(full));
    t.nodes_[root].mask = full;
    std::vector<std::uint32_t> todo{root};
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        const auto x = t.nodes_[v].mask;
        const bool m = t.nodes_[v].accepting;
        std::vector<std::uint32_t> cand;
        for (std::uint32_t y = (x - 1) & x; y; y = (y - 1) & x) {
            if (condition(y) != m) cand.push_back(y);
        }
        std::stable_sort(cand.begin(), cand.end(),
                         [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });
        std::vector<std::uint32_t> kept;
        for (auto y : cand) {
            bool inside = false;
            for (auto z : kept) {
                if ((y & z) == y) {
                    inside = true;
                    break;
                }
            }
            if (!inside) kept.push_back(y);
        }
        std::sort(kept.begin(), kept.end(), [](auto a, auto b) { return bits(a) < bits(b); });
        std::vector<std::uint32_t> created;
        for (auto y : kept) {
            auto c = t.add_node(v, !m);
            t.nodes_[c].mask = y;
            created.push_back(c);
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) todo.push_back(*it);
    }
    t.finish();
    return t;
}

bool
token_corner_accepting(const std::vector<std::uint8_t>& corner)
{
    if (corner[0] % 2 == 0) return true;
    for (std::size_t i = 1; i < corner.size(); i++) {
        if (corner[i] % 2 == 0) return false;
    }
    return true;
}

ZielonkaTree
build_zielonka_token(unsigned K, unsigned k)
{
    if (K < 1 || K > 15) throw PreconditionError("token tree needs 1 <= K <= 15");
    if (k < 1 || k > 3) throw PreconditionError("token tree needs 1 <= k <= 3");
    ZielonkaTree t;
    t.box_ = true;
    t.bound_ = K;
    t.dims_ = k + 1;
    t.ncolours_ = 1;
    for (unsigned i = 0; i <= k; i++) t.ncolours_ *= K + 1;
    auto root = t.add_node(NONE, true);
    t.nodes_[root].corner.assign(k + 1, 0);
    auto even_up = [](std::uint8_t y) { return static_cast<std::uint8_t>(y % 2 ? y + 1 : y); };
    auto odd_up = [](std::uint8_t y) { return static_cast<std::uint8_t>(y % 2 ? y : y + 1); };
    std::vector<std::uint32_t> todo{root};
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        const auto x = t.nodes_[v].corner;
        const bool acc = t.nodes_[v].accepting;
        std::vector<std::vector<std::uint8_t>> kids;
        if (acc && x[0] % 2 == 0) {
            // Eve's minimum turns odd and one Adam minimum turns even
            for (unsigned j = 1; j <= k; j++) {
                auto y = x;
                y[0] = static_cast<std::uint8_t>(x[0] + 1);
                y[j] = even_up(x[j]);
                kids.push_back(y);
            }
        } else if (acc) {
            for (unsigned j = 1; j <= k; j++) {
                auto y = x;
                y[j] = static_cast<std::uint8_t>(x[j] + 1);
                kids.push_back(y);
            }
        } else {
            auto y = x;
            y[0] = static_cast<std::uint8_t>(x[0] + 1);
            kids.push_back(y);
            auto z = x;
            for (unsigned j = 1; j <= k; j++) z[j] = odd_up(x[j]);
            kids.push_back(z);
        }
        std::erase_if(kids, [&](const auto& y) {
            return std::any_of(y.begin(), y.end(), [&](std::uint8_t c) { return c > K; });
        });
        std::vector<std::vector<std::uint8_t>> maximal;
        for (auto& y : kids) {
            bool dominated = std::any_of(kids.begin(), kids.end(),
                                         [&](const auto& z) { return z != y && corner_leq(z, y); });
            if (!dominated && std::find(maximal.begin(), maximal.end(), y) == maximal.end()) maximal.push_back(y);
        }
        std::vector<std::uint32_t> created;
        for (auto& y : maximal) {
            HDKIT_ASSERT(token_corner_accepting(y) != acc, "token tree child does not flip membership");
            auto c = t.add_node(v, !acc);
            t.nodes_[c].corner = y;
            created.push_back(c);
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) todo.push_back(*it);
    }
    t.finish();
    return t;
}

ZielonkaTree
build_zielonka_boxes(unsigned K, unsigned dims, const CornerCondition& condition)
{
    if (K < 1 || dims < 1) throw PreconditionError("box tree needs K >= 1 and dims >= 1");
    ZielonkaTree t;
    t.box_ = true;
    t.bound_ = K;
    t.dims_ = dims;
    t.ncolours_ = 1;
    for (unsigned i = 0; i < dims; i++) t.ncolours_ *= K + 1;
    if (t.ncolours_ > 4096) throw ResourceLimit("box tree limited to 4096 colours");
    std::vector<std::vector<std::uint8_t>> corners;
    for (std::uint32_t c = 0; c < t.ncolours_; c++) corners.push_back(t.coords_of(c));
    std::vector<std::uint8_t> zero(dims, 0);
    auto root = t.add_node(NONE, condition(zero));
    t.nodes_[root].corner = zero;
    std::vector<std::uint32_t> todo{root};
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        const auto x = t.nodes_[v].corner;
        const bool m = t.nodes_[v].accepting;
        std::vector<std::vector<std::uint8_t>> cand;
        for (auto& y : corners) {
            if (y != x && corner_leq(x, y) && condition(y) != m) cand.push_back(y);
        }
        auto kids = minimal_corners(std::move(cand));
        std::sort(kids.begin(), kids.end(), std::greater<>());
        std::vector<std::uint32_t> created;
        for (auto& y : kids) {
            auto c = t.add_node(v, !m);
            t.nodes_[c].corner = y;
            created.push_back(c);
        }
        for (auto it = created.rbegin(); it != created.rend(); ++it) todo.push_back(*it);
    }
    t.finish();
    return t;
}

MullerCondition
token_condition(unsigned K, unsigned k)
{
    return [K, k](std::uint32_t mask) {
        std::vector<std::uint8_t> lo(k + 1, static_cast<std::uint8_t>(K + 1));
        for (std::uint32_t c = 0; mask; c++, mask >>= 1) {
            if (!(mask & 1)) continue;
            auto x = c;
            for (unsigned i = 0; i <= k; i++) {
                lo[i] = std::min<std::uint8_t>(lo[i], static_cast<std::uint8_t>(x % (K + 1)));
                x /= K + 1;
            }
        }
        return token_corner_accepting(lo);
    };
}

unsigned
dcf_lasso_priority(const ZielonkaTree& t, const std::vector<std::uint32_t>& prefix,
                   const std::vector<std::uint32_t>& cycle)
{
    if (cycle.empty()) throw PreconditionError("lasso cycle must be nonempty");
    std::uint32_t b = 0;
    for (auto c : prefix) b = t.successor(b, c).first;
    std::map<std::uint32_t, std::size_t> seen;
    std::vector<unsigned> lows;
    while (!seen.count(b)) {
        seen[b] = lows.size();
        unsigned low = ~0u;
        for (auto c : cycle) {
            auto [nb, p] = t.successor(b, c);
            low = std::min(low, p);
            b = nb;
        }
        lows.push_back(low);
    }
    unsigned low = ~0u;
    for (auto i = seen[b]; i < lows.size(); i++) low = std::min(low, lows[i]);
    return low;
}

ParityGame
muller_to_parity(const MullerGame& m, const ZielonkaTree& t)
{
    const auto nb = t.num_branches();
    ParityGame g;
    for (std::uint32_t v = 0; v < m.graph.n; v++) {
        for (std::uint32_t b = 0; b < nb; b++) g.add_vertex(m.owner[v]);
    }
    for (std::uint32_t e = 0; e < m.graph.from.size(); e++) {
        if (m.colour[e] >= t.num_colours()) throw PreconditionError("edge colour outside the tree's colours");
        for (std::uint32_t b = 0; b < nb; b++) {
            auto [b2, p] = t.successor(b, m.colour[e]);
            g.add_edge(m.graph.from[e] * nb + b, m.graph.to[e] * nb + b2, p);
        }
    }
    g.finalise();
    g.initial = m.initial * nb;
    return g;
}

} // namespace hdkit
