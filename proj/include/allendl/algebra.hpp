// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "allendl/diff_engine.hpp"

namespace allendl {

/// The 13 base relations of the interval calculus, in canonical order.
/// p/m/o/s/d/f are precedes, meets, overlaps, starts, during, finishes;
/// the -i forms are their converses and eq is the identity.
enum class BaseRelation : std::uint8_t {
    eq = 0,
    p,
    pi,
    m,
    mi,
    o,
    oi,
    s,
    si,
    d,
    di,
    f,
    fi,
};

inline constexpr int kBaseRelationCount = 13;

constexpr std::array<BaseRelation, kBaseRelationCount> all_base_relations() {
    std::array<BaseRelation, kBaseRelationCount> out{};
    for (int i = 0; i < kBaseRelationCount; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<BaseRelation>(i);
    }
    return out;
}

BaseRelation converse(BaseRelation b);

/// Canonical token ("eq", "p", "pi", ...).
std::string_view token(BaseRelation b);

/// Parses a token; "e" is accepted as an alias for "eq".
std::optional<BaseRelation> base_relation_from_token(std::string_view tok);

/// A set of base relations, read disjunctively. Value type, 13 bits.
class Relation {
  public:
    constexpr Relation() = default;

    static constexpr Relation none() { return Relation(0); }
    static constexpr Relation all() { return Relation(kAllBits); }
    static constexpr Relation singleton(BaseRelation b) {
        return Relation(static_cast<std::uint16_t>(1u << static_cast<int>(b)));
    }

    constexpr bool contains(BaseRelation b) const {
        return (bits_ >> static_cast<int>(b)) & 1u;
    }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool is_universal() const { return bits_ == kAllBits; }
    int size() const { return __builtin_popcount(bits_); }

    constexpr Relation& operator|=(Relation o) { bits_ |= o.bits_; return *this; }
    constexpr Relation& operator&=(Relation o) { bits_ &= o.bits_; return *this; }
    constexpr Relation& add(BaseRelation b) { bits_ |= singleton(b).bits_; return *this; }
    constexpr Relation& remove(BaseRelation b) {
        bits_ &= static_cast<std::uint16_t>(~singleton(b).bits_);
        return *this;
    }

    friend constexpr Relation operator|(Relation a, Relation b) { return Relation(a.bits_ | b.bits_); }
    friend constexpr Relation operator&(Relation a, Relation b) { return Relation(a.bits_ & b.bits_); }
    friend constexpr bool operator==(Relation a, Relation b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator<(Relation a, Relation b) { return a.bits_ < b.bits_; }

    constexpr bool subset_of(Relation o) const { return (bits_ & ~o.bits_) == 0; }

    /// Members in canonical order.
    std::vector<BaseRelation> members() const;

    constexpr std::uint16_t bits() const { return bits_; }
    static constexpr Relation from_bits(std::uint16_t bits) {
        return Relation(static_cast<std::uint16_t>(bits & kAllBits));
    }

  private:
    static constexpr std::uint16_t kAllBits = 0x1fff;
    constexpr explicit Relation(std::uint16_t bits) : bits_(bits) {}
    std::uint16_t bits_ = 0;
};

Relation converse(Relation r);

/// Space-separated canonical tokens, e.g. "p m oi".
std::string to_string(Relation r);

/// The four symbolic endpoints of an ordered interval pair (X, Y).
enum class Endpoint : std::uint8_t { start_x, end_x, start_y, end_y };

Endpoint swap_xy(Endpoint e);

/// lhs - rhs <= bound over symbolic endpoints; bound is 0 or -1.
struct EndpointConstraint {
    Endpoint lhs;
    Endpoint rhs;
    int bound;

    friend bool operator==(const EndpointConstraint&, const EndpointConstraint&) = default;
};

using ConstraintTemplate = std::vector<EndpointConstraint>;

/// The difference constraints characterizing b between intervals X and Y.
const ConstraintTemplate& relation_template(BaseRelation b);

/// Engine variable layout used across the project: interval i owns
/// variables 2*i (start point) and 2*i + 1 (end point).
constexpr VarId start_var(int interval) { return 2 * interval; }
constexpr VarId end_var(int interval) { return 2 * interval + 1; }

/// Instantiates a template constraint for the concrete interval pair
/// (interval_x, interval_y) under the layout above.
DifferenceConstraint instantiate(const EndpointConstraint& c, int interval_x, int interval_y);

/// Interval validity bound: start - end <= -1, or <= 0 when point
/// intervals are allowed.
constexpr std::int64_t validity_bound(bool allow_point_intervals) {
    return allow_point_intervals ? 0 : -1;
}

/// Weak composition of two base relations, derived by feasibility checks
/// over three symbolic intervals in the difference engine.
Relation compose_base(BaseRelation b, BaseRelation b2, bool allow_point_intervals = false);

/// Memoized 13x13 weak-composition table. Construction is deterministic
/// and forced on first use; the function-local singletons make racing
/// first uses safe.
class CompositionTable {
  public:
    static const CompositionTable& strict();
    static const CompositionTable& with_point_intervals();
    static const CompositionTable& get(bool allow_point_intervals) {
        return allow_point_intervals ? with_point_intervals() : strict();
    }

    Relation compose(BaseRelation b, BaseRelation b2) const {
        return table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
    }
    /// Union of pairwise base compositions.
    Relation compose(Relation r, Relation r2) const;

    bool point_intervals() const { return point_intervals_; }

  private:
    explicit CompositionTable(bool allow_point_intervals);

    std::array<std::array<Relation, kBaseRelationCount>, kBaseRelationCount> table_;
    bool point_intervals_;
};

}  // namespace allendl
