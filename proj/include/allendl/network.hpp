// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "allendl/algebra.hpp"

namespace allendl {

/// An undirected edge slot, normalized to i < j.
struct EdgeRef {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// One base-relation choice on an edge.
struct EdgeChoice {
    int i = 0;
    int j = 0;
    BaseRelation rel = BaseRelation::eq;

    friend auto operator<=>(const EdgeChoice&, const EdgeChoice&) = default;
};

/// A qualitative constraint network, always normalized: only i < j slots are
/// stored, the diagonal is implicitly {eq}, the reverse direction is the
/// converse, and universal labels are never stored. Empty labels are stored
/// and mark trivial inconsistency.
class Qcn {
  public:
    explicit Qcn(int n);

    int num_variables() const { return n_; }

    /// Label between i and j (any orientation); {eq} on the diagonal,
    /// universal when no edge is stored.
    Relation label(int i, int j) const;

    bool has_edge(int i, int j) const;

    /// Intersects the stored label with r (r is converted to the stored
    /// orientation when i > j). Dropping to the universal relation removes
    /// the edge; empty results stay stored.
    void restrict_label(int i, int j, Relation r);

    /// Stored edges in ascending (i, j) order.
    std::vector<EdgeRef> edges() const;

    bool any_empty_label() const;

    friend bool operator==(const Qcn&, const Qcn&) = default;

  private:
    void check_pair(int i, int j) const;

    int n_;
    std::map<std::pair<int, int>, Relation> labels_;
};

/// Parse failure with a 1-based input line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// Instance text format:
///   line 1: variable count n
///   edge lines: `i j ( tok tok ... )`
///   terminator: `.`
/// Blank lines and `#` comments are ignored; repeated or reversed edge
/// lines intersect (reversed via converse).
Qcn parse_qcn(std::istream& in);
Qcn parse_qcn(std::string_view text);

/// Deterministic inverse of parse_qcn: sorted edge lines, canonical tokens.
std::string serialize_qcn(const Qcn& q);

/// Path-consistency fixpoint C(i,j) <- C(i,j) n (C(i,k) o C(k,j)).
/// Returns the refined network, or nullopt when some label becomes empty.
/// The result has the same solution set as the input.
std::optional<Qcn> algebraic_closure(const Qcn& q, const CompositionTable& table);

}  // namespace allendl
