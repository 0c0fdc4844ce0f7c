// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/algebra.hpp"

#include <cassert>
#include <stdexcept>

namespace allendl {

namespace {

constexpr std::array<std::string_view, kBaseRelationCount> kTokens = {
    "eq", "p", "pi", "m", "mi", "o", "oi", "s", "si", "d", "di", "f", "fi"};

// Converse pairs: eq is self-converse, every other relation swaps with its
// -i form, which sits next to it in the canonical order.
constexpr BaseRelation kConverse[kBaseRelationCount] = {
    BaseRelation::eq, BaseRelation::pi, BaseRelation::p,  BaseRelation::mi,
    BaseRelation::m,  BaseRelation::oi, BaseRelation::o,  BaseRelation::si,
    BaseRelation::s,  BaseRelation::di, BaseRelation::d,  BaseRelation::fi,
    BaseRelation::f};

ConstraintTemplate swapped(const ConstraintTemplate& t) {
    ConstraintTemplate out;
    out.reserve(t.size());
    for (const auto& c : t) {
        out.push_back(EndpointConstraint{swap_xy(c.lhs), swap_xy(c.rhs), c.bound});
    }
    return out;
}

std::array<ConstraintTemplate, kBaseRelationCount> build_templates() {
    using E = Endpoint;
    constexpr int kEq = 0;
    constexpr int kLt = -1;
    auto eq = [](E a, E b) {
        return ConstraintTemplate{{a, b, kEq}, {b, a, kEq}};
    };
    auto lt = [](E a, E b) { return EndpointConstraint{a, b, kLt}; };
    auto cat = [](std::initializer_list<ConstraintTemplate> parts) {
        ConstraintTemplate out;
        for (const auto& part : parts) {
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    };

    std::array<ConstraintTemplate, kBaseRelationCount> t;
    auto set = [&t](BaseRelation b, ConstraintTemplate tpl) {
        t[static_cast<std::size_t>(b)] = std::move(tpl);
    };

    // eq: sp(X)=sp(Y), ep(X)=ep(Y)
    set(BaseRelation::eq, cat({eq(E::start_x, E::start_y), eq(E::end_x, E::end_y)}));
    // p: ep(X)<sp(Y)
    set(BaseRelation::p, {lt(E::end_x, E::start_y)});
    // m: ep(X)=sp(Y)
    set(BaseRelation::m, eq(E::end_x, E::start_y));
    // o: sp(X)<sp(Y), sp(Y)<ep(X), ep(X)<ep(Y)
    set(BaseRelation::o,
        {lt(E::start_x, E::start_y), lt(E::start_y, E::end_x), lt(E::end_x, E::end_y)});
    // s: sp(X)=sp(Y), ep(X)<ep(Y)
    set(BaseRelation::s, cat({eq(E::start_x, E::start_y), {lt(E::end_x, E::end_y)}}));
    // d: sp(Y)<sp(X), ep(X)<ep(Y)
    set(BaseRelation::d, {lt(E::start_y, E::start_x), lt(E::end_x, E::end_y)});
    // f: ep(X)=ep(Y), sp(Y)<sp(X)
    set(BaseRelation::f, cat({eq(E::end_x, E::end_y), {lt(E::start_y, E::start_x)}}));

    // The converse forms are the base forms with X and Y swapped.
    for (BaseRelation b : {BaseRelation::p, BaseRelation::m, BaseRelation::o, BaseRelation::s,
                           BaseRelation::d, BaseRelation::f}) {
        set(converse(b), swapped(t[static_cast<std::size_t>(b)]));
    }
    return t;
}

}  // namespace

BaseRelation converse(BaseRelation b) { return kConverse[static_cast<std::size_t>(b)]; }

std::string_view token(BaseRelation b) { return kTokens[static_cast<std::size_t>(b)]; }

std::optional<BaseRelation> base_relation_from_token(std::string_view tok) {
    if (tok == "e") {
        return BaseRelation::eq;
    }
    for (int i = 0; i < kBaseRelationCount; ++i) {
        if (kTokens[static_cast<std::size_t>(i)] == tok) {
            return static_cast<BaseRelation>(i);
        }
    }
    return std::nullopt;
}

std::vector<BaseRelation> Relation::members() const {
    std::vector<BaseRelation> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (BaseRelation b : all_base_relations()) {
        if (contains(b)) {
            out.push_back(b);
        }
    }
    return out;
}

Relation converse(Relation r) {
    Relation out;
    for (BaseRelation b : all_base_relations()) {
        if (r.contains(b)) {
            out.add(converse(b));
        }
    }
    return out;
}

std::string to_string(Relation r) {
    std::string out;
    for (BaseRelation b : r.members()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += token(b);
    }
    return out;
}

Endpoint swap_xy(Endpoint e) {
    switch (e) {
        case Endpoint::start_x: return Endpoint::start_y;
        case Endpoint::end_x: return Endpoint::end_y;
        case Endpoint::start_y: return Endpoint::start_x;
        case Endpoint::end_y: return Endpoint::end_x;
    }
    assert(false);
    return Endpoint::start_x;
}

const ConstraintTemplate& relation_template(BaseRelation b) {
    static const std::array<ConstraintTemplate, kBaseRelationCount> templates = build_templates();
    return templates[static_cast<std::size_t>(b)];
}

DifferenceConstraint instantiate(const EndpointConstraint& c, int interval_x, int interval_y) {
    auto var = [&](Endpoint e) -> VarId {
        switch (e) {
            case Endpoint::start_x: return start_var(interval_x);
            case Endpoint::end_x: return end_var(interval_x);
            case Endpoint::start_y: return start_var(interval_y);
            case Endpoint::end_y: return end_var(interval_y);
        }
        assert(false);
        return 0;
    };
    return DifferenceConstraint{var(c.lhs), var(c.rhs), c.bound};
}

namespace {

bool assert_template(DiffEngine& eng, BaseRelation b, int interval_x, int interval_y) {
    for (const auto& c : relation_template(b)) {
        if (eng.assert_constraint(instantiate(c, interval_x, interval_y))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Relation compose_base(BaseRelation b, BaseRelation b2, bool allow_point_intervals) {
    // Three symbolic intervals X=0, Z=1, Y=2 with b on (X,Z) and b2 on (Z,Y);
    // a candidate is in the composition iff its template on (X,Y) is jointly
    // feasible with them.
    DiffEngine eng(6);
    const std::int64_t vb = validity_bound(allow_point_intervals);
    for (int i = 0; i < 3; ++i) {
        eng.assert_constraint(start_var(i), end_var(i), vb);
    }
    bool ok = assert_template(eng, b, 0, 1) && assert_template(eng, b2, 1, 2);
    assert(ok);  // two templates over distinct pairs cannot clash
    (void)ok;

    Relation out;
    for (BaseRelation cand : all_base_relations()) {
        const Mark mark = eng.push();
        if (assert_template(eng, cand, 0, 2)) {
            out.add(cand);
        }
        eng.pop(mark);
    }
    return out;
}

CompositionTable::CompositionTable(bool allow_point_intervals)
    : point_intervals_(allow_point_intervals) {
    for (BaseRelation b : all_base_relations()) {
        for (BaseRelation b2 : all_base_relations()) {
            table_[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)] =
                compose_base(b, b2, allow_point_intervals);
        }
    }
}

const CompositionTable& CompositionTable::strict() {
    static const CompositionTable table(false);
    return table;
}

const CompositionTable& CompositionTable::with_point_intervals() {
    static const CompositionTable table(true);
    return table;
}

Relation CompositionTable::compose(Relation r, Relation r2) const {
    Relation out;
    for (BaseRelation b : all_base_relations()) {
        if (!r.contains(b)) {
            continue;
        }
        for (BaseRelation b2 : all_base_relations()) {
            if (r2.contains(b2)) {
                out |= compose(b, b2);
            }
        }
    }
    return out;
}

}  // namespace allendl
