// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "allendl/diff_engine.hpp"
#include "allendl/instances.hpp"
#include "allendl/network.hpp"
#include "allendl/solver.hpp"

namespace allendl::test {

using Interval = std::pair<std::int64_t, std::int64_t>;

// The base relation realized by two concrete strict intervals, written out
// from the endpoint definitions of the calculus (independent of the
// template machinery under test).
inline std::optional<BaseRelation> realized(Interval x, Interval y) {
    const auto [xs, xe] = x;
    const auto [ys, ye] = y;
    if (xs >= xe || ys >= ye) {
        return std::nullopt;  // not strict intervals
    }
    if (xs == ys && xe == ye) return BaseRelation::eq;
    if (xe < ys) return BaseRelation::p;
    if (ye < xs) return BaseRelation::pi;
    if (xe == ys) return BaseRelation::m;
    if (ye == xs) return BaseRelation::mi;
    if (xs < ys && ys < xe && xe < ye) return BaseRelation::o;
    if (ys < xs && xs < ye && ye < xe) return BaseRelation::oi;
    if (xs == ys && xe < ye) return BaseRelation::s;
    if (xs == ys && ye < xe) return BaseRelation::si;
    if (ys < xs && xe < ye) return BaseRelation::d;
    if (xs < ys && ye < xe) return BaseRelation::di;
    if (xe == ye && ys < xs) return BaseRelation::f;
    if (xe == ye && xs < ys) return BaseRelation::fi;
    return std::nullopt;  // unreachable for strict intervals
}

// True when the solution's intervals realize the scenario edge by edge.
inline bool witness_matches(const Scenario& scenario, const IntervalSolution& sol) {
    for (const EdgeChoice& c : scenario.choices) {
        const auto b = realized(sol.intervals[static_cast<std::size_t>(c.i)],
                                sol.intervals[static_cast<std::size_t>(c.j)]);
        if (!b || *b != c.rel) {
            return false;
        }
    }
    return true;
}

// All-pairs shortest path feasibility oracle (Floyd-Warshall), independent
// of both the incremental engine and the instances-module Bellman-Ford.
inline bool fw_feasible(int num_vars, const std::vector<DifferenceConstraint>& cs) {
    constexpr std::int64_t inf = std::int64_t{1} << 60;
    std::vector<std::vector<std::int64_t>> dist(
        static_cast<std::size_t>(num_vars),
        std::vector<std::int64_t>(static_cast<std::size_t>(num_vars), inf));
    for (int i = 0; i < num_vars; ++i) {
        dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    }
    for (const auto& c : cs) {
        auto& cell = dist[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)];
        cell = std::min(cell, c.k);
    }
    for (int k = 0; k < num_vars; ++k) {
        for (int i = 0; i < num_vars; ++i) {
            for (int j = 0; j < num_vars; ++j) {
                const auto via = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                 dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (via < dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
                }
            }
        }
    }
    for (int i = 0; i < num_vars; ++i) {
        if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] < 0) {
            return false;
        }
    }
    return true;
}

inline bool satisfies_all(const Assignment& tau, const std::vector<DifferenceConstraint>& cs) {
    for (const auto& c : cs) {
        if (tau[static_cast<std::size_t>(c.x)] - tau[static_cast<std::size_t>(c.y)] > c.k) {
            return false;
        }
    }
    return true;
}

// Conflict shape: constraints chain y-to-x around a closed loop and the
// bounds sum below zero.
inline bool valid_conflict(const Conflict& conflict) {
    if (conflict.cycle.empty() || conflict.bound_sum() >= 0) {
        return false;
    }
    const std::size_t n = conflict.cycle.size();
    for (std::size_t t = 0; t < n; ++t) {
        if (conflict.cycle[t].x != conflict.cycle[(t + 1) % n].y) {
            return false;
        }
    }
    return true;
}

// Mixed-label random instance in the spirit of model A, kept tiny for
// oracle comparisons.
inline Qcn small_random_qcn(int n, double d, double s, std::uint64_t seed) {
    return allendl::generate_a(allendl::GenSpecA{n, d, s, seed});
}

// Scenario-space size (product of label sizes), saturating at the cap.
inline std::uint64_t label_product(const Qcn& q, std::uint64_t cap = UINT64_MAX) {
    std::uint64_t product = 1;
    for (const EdgeRef& e : q.edges()) {
        const std::uint64_t size = static_cast<std::uint64_t>(q.label(e.i, e.j).size());
        if (size == 0) {
            return 0;
        }
        if (product > cap / size) {
            return cap;
        }
        product *= size;
    }
    return product;
}

}  // namespace allendl::test
