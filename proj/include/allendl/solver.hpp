// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "allendl/algebra.hpp"
#include "allendl/network.hpp"

namespace allendl {

/// Undecided-edge selection heuristic.
enum class DecisionOrder {
    fail_first,       // fewest remaining candidates, ties by lowest (i, j)
    weighted_degree,  // fewest candidates per accumulated conflict weight
};

struct SolveOptions {
    bool allow_point_intervals = false;
    bool use_closure = true;
    bool forward_check = true;
    /// Conflict-directed backjumping driven by the negative-cycle origins.
    /// Off by default; answers are identical either way.
    bool backjump = false;
    DecisionOrder order = DecisionOrder::fail_first;
    std::optional<double> timeout_s;
};

enum class Status { sat, unsat, aborted };

std::string_view to_string(Status s);

struct SolveStats {
    std::int64_t decisions = 0;
    std::int64_t conflicts = 0;
    std::int64_t propagations = 0;
    std::int64_t wall_ms = 0;
};

/// One chosen base relation per stored edge of the input network.
struct Scenario {
    std::vector<EdgeChoice> choices;  // ascending (i, j)

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Concrete integer endpoints per variable; variable 0's start point is the
/// zero reference.
struct IntervalSolution {
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
};

/// A label subset attached to an edge (used for union results).
struct EdgeRelation {
    EdgeRef edge;
    Relation rels;

    friend bool operator==(const EdgeRelation&, const EdgeRelation&) = default;
};

struct SolveResult {
    Status status = Status::unsat;
    std::optional<Scenario> scenario;
    std::optional<IntervalSolution> solution;
    SolveStats stats;
};

struct BackboneResult {
    Status status = Status::unsat;
    std::vector<EdgeChoice> backbone;  // only edges with a forced choice
    SolveStats stats;
};

struct UnionResult {
    Status status = Status::unsat;
    std::vector<EdgeRelation> unions;  // every stored edge, ascending
    SolveStats stats;
};

struct EnumerateResult {
    Status status = Status::unsat;
    std::vector<Scenario> scenarios;
    std::vector<IntervalSolution> solutions;
    bool exhausted = false;
    SolveStats stats;
};

/// Backtracking search over base-relation choices per stored edge, with the
/// difference engine enforcing the induced endpoint constraints.
///
/// Scenarios, backbone, and union results always range over the *input*
/// network's stored edges; algebraic closure (when enabled) only refines the
/// labels attached to them, so answers are identical with closure on or off.
class Solver {
  public:
    explicit Solver(Qcn q, SolveOptions opts = {});

    SolveResult solve();
    BackboneResult backbone();
    UnionResult union_labels();
    /// Up to `limit` (>= 1) distinct consistent scenarios, exhaustive when
    /// fewer exist.
    EnumerateResult enumerate(std::uint64_t limit);

    const std::vector<EdgeRef>& choice_edges() const { return edges_; }

  private:
    struct Prepared {
        bool refuted = false;
        std::vector<Relation> labels;
    };

    Prepared prepare_labels(const std::vector<Relation>& base) const;

    Qcn input_;
    SolveOptions opts_;
    std::vector<EdgeRef> edges_;
    std::vector<Relation> labels_;
};

}  // namespace allendl
