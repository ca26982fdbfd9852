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

#include "hdkit/graph.hpp"

#include <algorithm>
#include <deque>


namespace hdkit {

namespace {

Csr
make_csr(std::uint32_t n, const std::vector<std::uint32_t>& key)
{
    Csr c;
    c.offset.assign(n + 1, 0);
    for (auto k : key) c.offset[k + 1]++;
    for (std::uint32_t v = 0; v < n; v++) c.offset[v + 1] += c.offset[v];
    c.edge.resize(key.size());
    std::vector<std::uint32_t> pos(c.offset.begin(), c.offset.end() - 1);
    for (std::uint32_t e = 0; e < key.size(); e++) c.edge[pos[key[e]]++] = e;
    return c;
}

// Shortest path of edge ids from any source to target using edges in keep.
std::vector<std::uint32_t>
bfs_path(const Digraph& g, const Csr& out, const std::vector<std::uint32_t>& sources,
         std::uint32_t target, const std::vector<bool>& keep)
{
    std::vector<std::uint32_t> via(g.n, NONE);
    std::vector<bool> seen(g.n, false);
    std::deque<std::uint32_t> queue;
    for (auto s : sources) {
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty() && !seen[target]) {
        auto v = queue.front();
        queue.pop_front();
        for (auto i = out.offset[v]; i < out.offset[v + 1]; i++) {
            auto e = out.edge[i];
            if (!keep.empty() && !keep[e]) continue;
            auto w = g.to[e];
            if (seen[w]) continue;
            seen[w] = true;
            via[w] = e;
            queue.push_back(w);
        }
    }
    std::vector<std::uint32_t> path;
    if (!seen[target]) return path;
    for (auto v = target; via[v] != NONE; v = g.from[via[v]]) {
        path.push_back(via[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

Csr
out_csr(const Digraph& g)
{
    return make_csr(g.n, g.from);
}

Csr
in_csr(const Digraph& g)
{
    return make_csr(g.n, g.to);
}

std::vector<std::uint32_t>
scc(const Digraph& g, const std::vector<bool>& keep, std::uint32_t& count)
{
    const auto n = g.n;
    Csr c = out_csr(g);
    std::vector<std::uint32_t> index(n, NONE), low(n, 0), comp(n, NONE);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;
    std::uint32_t next = 0;
    count = 0;
    for (std::uint32_t s = 0; s < n; s++) {
        if (index[s] != NONE) continue;
        index[s] = low[s] = next++;
        stack.push_back(s);
        on_stack[s] = true;
        frames.emplace_back(s, c.offset[s]);
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < c.offset[v + 1]) {
                auto e = c.edge[pos++];
                if (!keep.empty() && !keep[e]) continue;
                auto w = g.to[e];
                if (index[w] == NONE) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, c.offset[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            auto done = v;
            frames.pop_back();
            if (low[done] == index[done]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != done);
                count++;
            }
            if (!frames.empty()) {
                auto parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

std::vector<bool>
reachable(const Digraph& g, const std::vector<std::uint32_t>& sources, const std::vector<bool>& keep)
{
    Csr c = out_csr(g);
    std::vector<bool> seen(g.n, false);
    std::vector<std::uint32_t> todo;
    for (auto s : sources) {
        if (!seen[s]) {
            seen[s] = true;
            todo.push_back(s);
        }
    }
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        for (auto i = c.offset[v]; i < c.offset[v + 1]; i++) {
            auto e = c.edge[i];
            if (!keep.empty() && !keep[e]) continue;
            if (!seen[g.to[e]]) {
                seen[g.to[e]] = true;
                todo.push_back(g.to[e]);
            }
        }
    }
    return seen;
}

bool
has_cycle_with_min_parity(const Digraph& g, const std::vector<unsigned>& label,
                          const std::vector<std::uint32_t>& sources, unsigned parity,
                          const std::vector<bool>& keep)
{
    auto live = reachable(g, sources, keep);
    std::vector<unsigned> values;
    for (std::uint32_t e = 0; e < g.from.size(); e++) {
        if ((keep.empty() || keep[e]) && live[g.from[e]] && label[e] % 2 == parity) values.push_back(label[e]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<bool> sub(g.from.size());
    for (auto c : values) {
        for (std::uint32_t e = 0; e < g.from.size(); e++) {
            sub[e] = (keep.empty() || keep[e]) && live[g.from[e]] && label[e] >= c;
        }
        std::uint32_t count;
        auto comp = scc(g, sub, count);
        for (std::uint32_t e = 0; e < g.from.size(); e++) {
            if (sub[e] && label[e] == c && comp[g.from[e]] == comp[g.to[e]]) return true;
        }
    }
    return false;
}

bool
find_even_odd_cycle(const Digraph& g, const std::vector<unsigned>& first,
                    const std::vector<unsigned>& second, const std::vector<std::uint32_t>& sources,
                    std::vector<std::uint32_t>* stem, std::vector<std::uint32_t>* cycle)
{
    const auto m = static_cast<std::uint32_t>(g.from.size());
    auto live = reachable(g, sources, {});
    std::vector<unsigned> evens, odds;
    for (std::uint32_t e = 0; e < m; e++) {
        if (!live[g.from[e]]) continue;
        if (first[e] % 2 == 0) evens.push_back(first[e]);
        if (second[e] % 2 == 1) odds.push_back(second[e]);
    }
    for (auto* v : {&evens, &odds}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    Csr out = out_csr(g);
    std::vector<bool> sub(m);
    for (auto d : evens) {
        for (auto o : odds) {
            for (std::uint32_t e = 0; e < m; e++) sub[e] = live[g.from[e]] && first[e] >= d && second[e] >= o;
            std::uint32_t count;
            auto comp = scc(g, sub, count);
            std::vector<std::uint32_t> has_d(count, NONE), has_o(count, NONE);
            for (std::uint32_t e = 0; e < m; e++) {
                if (!sub[e] || comp[g.from[e]] != comp[g.to[e]]) continue;
                auto k = comp[g.from[e]];
                if (first[e] == d && has_d[k] == NONE) has_d[k] = e;
                if (second[e] == o && has_o[k] == NONE) has_o[k] = e;
            }
            for (std::uint32_t k = 0; k < count; k++) {
                if (has_d[k] == NONE || has_o[k] == NONE) continue;
                if (stem == nullptr && cycle == nullptr) return true;
                std::vector<bool> inside(m);
                for (std::uint32_t e = 0; e < m; e++) {
                    inside[e] = sub[e] && comp[g.from[e]] == k && comp[g.to[e]] == k;
                }
                auto e1 = has_d[k], e2 = has_o[k];
                std::vector<std::uint32_t> walk{e1};
                auto append = [&](std::uint32_t s, std::uint32_t t) {
                    if (s == t) return;
                    auto p = bfs_path(g, out, {s}, t, inside);
                    walk.insert(walk.end(), p.begin(), p.end());
                };
                if (e1 != e2) {
                    append(g.to[e1], g.from[e2]);
                    walk.push_back(e2);
                    append(g.to[e2], g.from[e1]);
                } else {
                    append(g.to[e1], g.from[e1]);
                }
                if (cycle) *cycle = walk;
                if (stem) {
                    bool at_source = std::find(sources.begin(), sources.end(), g.from[e1]) != sources.end();
                    *stem = at_source ? std::vector<std::uint32_t>{} : bfs_path(g, out, sources, g.from[e1], {});
                }
                return true;
            }
        }
    }
    return false;
}

} // namespace hdkit
