// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace allendl {

/// Dense index of one integer-valued variable inside an engine.
using VarId = int;

/// One difference constraint x - y <= k over integer variables.
struct DifferenceConstraint {
    VarId x = 0;
    VarId y = 0;
    std::int64_t k = 0;

    friend bool operator==(const DifferenceConstraint&, const DifferenceConstraint&) = default;
};

/// A negative cycle witnessing infeasibility. Constraints chain y-to-x:
/// cycle[t].x == cycle[t+1].y (indices mod size) and the bounds sum below zero.
/// edge_ids holds the engine stack index of each cycle constraint (-1 for the
/// constraint whose assertion failed), letting callers attribute blame.
struct Conflict {
    std::vector<DifferenceConstraint> cycle;
    std::vector<int> edge_ids;

    std::int64_t bound_sum() const;
};

/// Integer values indexed by VarId.
using Assignment = std::vector<std::int64_t>;

/// Backtracking mark returned by DiffEngine::push(). Only valid for the
/// engine that produced it, in LIFO order.
struct Mark {
    std::size_t level = 0;
    std::size_t edges = 0;
};

/// Incremental difference-constraint engine.
///
/// Feasibility is maintained with a potential function: every stored
/// constraint x - y <= k satisfies pot(y) + k - pot(x) >= 0. Asserting a
/// constraint that violates this runs a label-correcting relaxation rooted
/// at x; if the relaxation reaches y again the constraint closes a negative
/// cycle, the cycle is returned, and the engine is left exactly as before
/// the call. The engine therefore never holds an inconsistent set.
///
/// One instance is single-threaded; distinct instances are independent.
class DiffEngine {
  public:
    explicit DiffEngine(int num_vars);

    int num_vars() const { return num_vars_; }

    /// Always true: assertion is atomic, a rejected constraint leaves no trace.
    bool is_feasible() const { return true; }

    /// Asserts x - y <= k. Returns a negative cycle containing the new
    /// constraint when it is inconsistent with the active set.
    std::optional<Conflict> assert_constraint(const DifferenceConstraint& c);
    std::optional<Conflict> assert_constraint(VarId x, VarId y, std::int64_t k) {
        return assert_constraint(DifferenceConstraint{x, y, k});
    }

    /// Cheap sufficient test from the current potentials: when true,
    /// asserting c cannot conflict. No state is touched.
    bool trivially_consistent(const DifferenceConstraint& c) const;

    Mark push();
    /// Restores the state at the matching push(). Non-LIFO use throws.
    void pop(const Mark& m);

    /// Concrete witness with values[reference] == 0, computed from scratch
    /// over the active constraints (deterministic for a fixed set).
    Assignment extract_assignment(VarId reference) const;

    std::size_t active_count() const { return edges_.size(); }
    std::vector<DifferenceConstraint> active_constraints() const;

    /// Debug dump, one "x y k" triple per line.
    void dump(std::ostream& os) const;

  private:
    struct Edge {
        VarId from;  // the y of x - y <= k
        VarId to;    // the x
        std::int64_t weight;
    };

    void check_var(VarId v) const;
    void attach(VarId from, VarId to, std::int64_t weight);
    Conflict build_conflict(const DifferenceConstraint& c, VarId stop) const;

    int num_vars_;
    std::vector<Edge> edges_;               // stack order; pop truncates
    std::vector<std::vector<int>> out_;     // edge indices by Edge::from
    std::vector<std::int64_t> pot_;

    std::vector<std::size_t> levels_;       // edge counts at push marks

    // relaxation scratch, generation-stamped so asserts do not reallocate
    std::uint64_t stamp_ = 0;
    std::vector<std::uint64_t> seen_;
    std::vector<std::uint64_t> done_;
    std::vector<std::int64_t> cost_;
    std::vector<int> reach_edge_;
    std::vector<std::pair<VarId, std::int64_t>> undo_pot_;
};

}  // namespace allendl
