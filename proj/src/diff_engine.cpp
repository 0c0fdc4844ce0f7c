// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/diff_engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace allendl {

std::int64_t Conflict::bound_sum() const {
    std::int64_t sum = 0;
    for (const auto& c : cycle) {
        sum += c.k;
    }
    return sum;
}

DiffEngine::DiffEngine(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) {
        throw std::invalid_argument("DiffEngine: negative variable count");
    }
    out_.resize(num_vars);
    pot_.assign(num_vars, 0);
    seen_.assign(num_vars, 0);
    done_.assign(num_vars, 0);
    cost_.assign(num_vars, 0);
    reach_edge_.assign(num_vars, -1);
}

void DiffEngine::check_var(VarId v) const {
    if (v < 0 || v >= num_vars_) {
        throw std::out_of_range("DiffEngine: variable " + std::to_string(v) + " out of range");
    }
}

bool DiffEngine::trivially_consistent(const DifferenceConstraint& c) const {
    check_var(c.x);
    check_var(c.y);
    if (c.x == c.y) {
        return c.k >= 0;
    }
    return pot_[c.y] + c.k - pot_[c.x] >= 0;
}

void DiffEngine::attach(VarId from, VarId to, std::int64_t weight) {
    out_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{from, to, weight});
}

Conflict DiffEngine::build_conflict(const DifferenceConstraint& c, VarId stop) const {
    // Tree path from c.y back to the relaxation root c.x, then reversed so
    // the cycle starts with c and chains y-to-x.
    std::vector<DifferenceConstraint> path;
    std::vector<int> ids;
    VarId node = c.y;
    while (node != stop) {
        const int eidx = reach_edge_[node];
        const Edge& e = edges_[eidx];
        path.push_back(DifferenceConstraint{e.to, e.from, e.weight});
        ids.push_back(eidx);
        node = e.from;
    }
    std::reverse(path.begin(), path.end());
    std::reverse(ids.begin(), ids.end());

    Conflict conflict;
    conflict.cycle.reserve(path.size() + 1);
    conflict.cycle.push_back(c);
    conflict.cycle.insert(conflict.cycle.end(), path.begin(), path.end());
    conflict.edge_ids.reserve(ids.size() + 1);
    conflict.edge_ids.push_back(-1);
    conflict.edge_ids.insert(conflict.edge_ids.end(), ids.begin(), ids.end());
    assert(conflict.bound_sum() < 0);
    return conflict;
}

std::optional<Conflict> DiffEngine::assert_constraint(const DifferenceConstraint& c) {
    check_var(c.x);
    check_var(c.y);
    if (c.x == c.y) {
        if (c.k >= 0) {
            return std::nullopt;  // vacuous, nothing stored
        }
        return Conflict{{c}, {-1}};  // negative self-loop
    }

    const VarId u = c.y;  // constraint is an edge u -> v of weight k
    const VarId v = c.x;
    if (pot_[u] + c.k - pot_[v] >= 0) {
        attach(u, v, c.k);
        return std::nullopt;
    }

    // Relaxation rooted at v. Potentials only decrease; the changes are
    // logged so a detected cycle can restore the pre-call state.
    ++stamp_;
    undo_pot_.clear();
    using Item = std::pair<std::int64_t, VarId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

    seen_[v] = stamp_;
    cost_[v] = pot_[u] + c.k - pot_[v];
    reach_edge_[v] = -1;
    heap.emplace(cost_[v], v);

    bool cycle_found = false;
    while (!heap.empty() && !cycle_found) {
        auto [cs, s] = heap.top();
        heap.pop();
        if (done_[s] == stamp_ || cs != cost_[s]) {
            continue;  // stale entry
        }
        done_[s] = stamp_;
        undo_pot_.emplace_back(s, pot_[s]);
        pot_[s] += cost_[s];
        for (int eidx : out_[s]) {
            const Edge& e = edges_[eidx];
            const VarId t = e.to;
            const std::int64_t ct = pot_[s] + e.weight - pot_[t];
            if (ct >= (seen_[t] == stamp_ ? cost_[t] : 0)) {
                continue;
            }
            assert(done_[t] != stamp_);
            seen_[t] = stamp_;
            cost_[t] = ct;
            reach_edge_[t] = eidx;
            if (t == u) {
                cycle_found = true;
                break;
            }
            heap.emplace(ct, t);
        }
    }

    if (cycle_found) {
        Conflict conflict = build_conflict(c, v);
        for (auto it = undo_pot_.rbegin(); it != undo_pot_.rend(); ++it) {
            pot_[it->first] = it->second;
        }
        return conflict;
    }

    attach(u, v, c.k);
    return std::nullopt;
}

Mark DiffEngine::push() {
    levels_.push_back(edges_.size());
    return Mark{levels_.size(), edges_.size()};
}

void DiffEngine::pop(const Mark& m) {
    if (m.level != levels_.size() || levels_.back() != m.edges) {
        throw std::logic_error("DiffEngine: non-LIFO pop");
    }
    while (edges_.size() > m.edges) {
        const Edge& e = edges_.back();
        assert(!out_[e.from].empty() &&
               out_[e.from].back() == static_cast<int>(edges_.size()) - 1);
        out_[e.from].pop_back();
        edges_.pop_back();
    }
    levels_.pop_back();
}

Assignment DiffEngine::extract_assignment(VarId reference) const {
    if (num_vars_ == 0) {
        return {};
    }
    check_var(reference);

    // Shortest distances from a virtual source connected to every variable
    // with weight 0; the fixpoint is unique, hence deterministic.
    Assignment dist(num_vars_, 0);
    std::vector<char> queued(num_vars_, 1);
    std::deque<VarId> queue;
    for (VarId i = 0; i < num_vars_; ++i) {
        queue.push_back(i);
    }
    while (!queue.empty()) {
        const VarId a = queue.front();
        queue.pop_front();
        queued[a] = 0;
        for (int eidx : out_[a]) {
            const Edge& e = edges_[eidx];
            if (dist[a] + e.weight < dist[e.to]) {
                dist[e.to] = dist[a] + e.weight;
                if (!queued[e.to]) {
                    queued[e.to] = 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    const std::int64_t shift = dist[reference];
    for (auto& value : dist) {
        value -= shift;
    }
    return dist;
}

std::vector<DifferenceConstraint> DiffEngine::active_constraints() const {
    std::vector<DifferenceConstraint> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) {
        out.push_back(DifferenceConstraint{e.to, e.from, e.weight});
    }
    return out;
}

void DiffEngine::dump(std::ostream& os) const {
    for (const Edge& e : edges_) {
        os << e.to << ' ' << e.from << ' ' << e.weight << '\n';
    }
}

}  // namespace allendl
