// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/instances.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace allendl {

std::uint64_t Rng::next_below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::next_below: n must be positive");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % n;
}

namespace {

void check_edge_spec(int n, double d) {
    if (n < 2) {
        throw std::invalid_argument("generator: n must be at least 2");
    }
    if (!(d > 0) || d > static_cast<double>(n - 1)) {
        throw std::invalid_argument("generator: need 0 < d <= n-1");
    }
}

}  // namespace

Qcn generate_a(const GenSpecA& spec) {
    check_edge_spec(spec.n, spec.d);
    if (spec.s < 1.0 || spec.s > 13.0) {
        throw std::invalid_argument("generator: need 1 <= s <= 13");
    }
    Rng rng(spec.seed);
    Qcn q(spec.n);
    const double edge_p = spec.d / static_cast<double>(spec.n - 1);
    const double member_p = spec.s / 13.0;
    for (int i = 0; i < spec.n; ++i) {
        for (int j = i + 1; j < spec.n; ++j) {
            if (rng.next_unit() >= edge_p) {
                continue;
            }
            Relation label;
            do {
                label = Relation::none();
                for (BaseRelation b : all_base_relations()) {
                    if (rng.next_unit() < member_p) {
                        label.add(b);
                    }
                }
            } while (label.empty() || label.is_universal());
            q.restrict_label(i, j, label);
        }
    }
    return q;
}

Qcn generate_h(const GenSpecH& spec) {
    check_edge_spec(spec.n, spec.d);
    if (spec.pool.empty()) {
        throw std::invalid_argument("generator: empty relation pool");
    }
    for (const Relation& r : spec.pool) {
        if (r.empty() || r.is_universal()) {
            throw std::invalid_argument("generator: pool entries must be non-empty, non-universal");
        }
    }
    Rng rng(spec.seed);
    Qcn q(spec.n);
    const double edge_p = spec.d / static_cast<double>(spec.n - 1);
    for (int i = 0; i < spec.n; ++i) {
        for (int j = i + 1; j < spec.n; ++j) {
            if (rng.next_unit() >= edge_p) {
                continue;
            }
            q.restrict_label(i, j, spec.pool[rng.next_below(spec.pool.size())]);
        }
    }
    return q;
}

namespace {

// The 16 order literals over the cross-endpoint pairs of intervals X and Y:
// for each pair (a, b) in {start/end of X} x {start/end of Y}, the literals
// a<=b, b<=a, a=b, a!=b. Within-interval order is fixed by validity and
// carries no information.
struct LiteralTruth {
    // truth[l] has bit t set when literal l holds under base relation t
    std::array<std::uint16_t, 16> truth{};
};

LiteralTruth literal_truth_table() {
    LiteralTruth out;
    for (BaseRelation b : all_base_relations()) {
        // A concrete witness of b fixes the full endpoint order.
        DiffEngine eng(4);
        eng.assert_constraint(start_var(0), end_var(0), -1);
        eng.assert_constraint(start_var(1), end_var(1), -1);
        for (const auto& c : relation_template(b)) {
            const auto conflict = eng.assert_constraint(instantiate(c, 0, 1));
            assert(!conflict);
            (void)conflict;
        }
        const Assignment v = eng.extract_assignment(0);
        const std::array<std::int64_t, 2> xs = {v[0], v[1]};
        const std::array<std::int64_t, 2> ys = {v[2], v[3]};
        const std::uint16_t bit = static_cast<std::uint16_t>(1u << static_cast<int>(b));
        int l = 0;
        for (int xe = 0; xe < 2; ++xe) {
            for (int ye = 0; ye < 2; ++ye) {
                const std::int64_t a = xs[static_cast<std::size_t>(xe)];
                const std::int64_t c = ys[static_cast<std::size_t>(ye)];
                if (a <= c) out.truth[static_cast<std::size_t>(l + 0)] |= bit;
                if (c <= a) out.truth[static_cast<std::size_t>(l + 1)] |= bit;
                if (a == c) out.truth[static_cast<std::size_t>(l + 2)] |= bit;
                if (a != c) out.truth[static_cast<std::size_t>(l + 3)] |= bit;
                l += 4;
            }
        }
    }
    return out;
}

// Minimum number of literals false under `excluded` whose union covers all
// members of rel (each member must satisfy a literal of the clause). This is
// the width of the narrowest implicate clause that rules `excluded` out.
int min_clause_width(std::uint16_t rel, int excluded, const LiteralTruth& lits) {
    const int m = __builtin_popcount(rel);
    std::array<int, 13> member_index{};
    {
        int idx = 0;
        for (int t = 0; t < kBaseRelationCount; ++t) {
            if (rel & (1u << t)) {
                member_index[static_cast<std::size_t>(t)] = idx++;
            }
        }
    }
    std::vector<std::uint32_t> covers;  // bitmask over rel's members
    for (int l = 0; l < 16; ++l) {
        if (lits.truth[static_cast<std::size_t>(l)] & (1u << excluded)) {
            continue;  // literal true under the excluded relation: unusable
        }
        std::uint32_t mask = 0;
        for (int t = 0; t < kBaseRelationCount; ++t) {
            if ((rel & (1u << t)) && (lits.truth[static_cast<std::size_t>(l)] & (1u << t))) {
                mask |= 1u << member_index[static_cast<std::size_t>(t)];
            }
        }
        if (mask != 0) {
            covers.push_back(mask);
        }
    }

    const std::uint32_t full = m == 0 ? 0 : (m >= 32 ? ~0u : (1u << m) - 1);
    if (full == 0) {
        return 1;  // empty relation is excluded by any unit clause
    }
    // Exact set cover by subset DP: f[S] = fewest literals covering S, built
    // by always covering the lowest uncovered member.
    std::vector<int> f(static_cast<std::size_t>(full) + 1, INT32_MAX);
    f[0] = 0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        const std::uint32_t low = s & (~s + 1);
        int best = INT32_MAX;
        for (const std::uint32_t c : covers) {
            if (c & low) {
                const int sub = f[s & ~c];
                if (sub != INT32_MAX && sub + 1 < best) {
                    best = sub + 1;
                }
            }
        }
        f[s] = best;
    }
    return f[full];
}

}  // namespace

std::vector<Relation> derive_hard_pool() {
    const LiteralTruth lits = literal_truth_table();
    std::vector<Relation> pool;
    for (std::uint32_t mask = 1; mask < (1u << kBaseRelationCount) - 1; ++mask) {
        int width = 0;
        for (int t = 0; t < kBaseRelationCount; ++t) {
            if (mask & (1u << t)) {
                continue;
            }
            width = std::max(width,
                             min_clause_width(static_cast<std::uint16_t>(mask), t, lits));
        }
        if (width >= 3) {
            pool.push_back(Relation::from_bits(static_cast<std::uint16_t>(mask)));
        }
    }
    return pool;
}

const std::vector<Relation>& default_hard_pool() {
    static const std::vector<Relation> pool = derive_hard_pool();
    return pool;
}

std::vector<Relation> load_pool(std::istream& in) {
    std::vector<Relation> pool;
    std::set<Relation> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string cleaned;
        for (char c : line) {
            if (c == '#') {
                break;
            }
            cleaned += (c == '(' || c == ')') ? ' ' : c;
        }
        std::istringstream ss(cleaned);
        Relation rel;
        std::string tok;
        bool any = false;
        while (ss >> tok) {
            const auto b = base_relation_from_token(tok);
            if (!b) {
                throw ParseError(line_no, "unknown relation token '" + tok + "'");
            }
            rel.add(*b);
            any = true;
        }
        if (!any) {
            continue;
        }
        if (rel.is_universal()) {
            throw ParseError(line_no, "universal relation not allowed in a pool");
        }
        if (seen.insert(rel).second) {
            pool.push_back(rel);
        }
    }
    if (pool.empty()) {
        throw std::invalid_argument("pool file contains no relations");
    }
    for (const Relation& r : pool) {
        if (!seen.contains(converse(r))) {
            throw std::invalid_argument("pool is not closed under converse (missing " +
                                        to_string(converse(r)) + ")");
        }
    }
    return pool;
}

std::string serialize_pool(const std::vector<Relation>& pool, bool with_header) {
    std::ostringstream out;
    if (with_header) {
        out << "# Hard relation pool (" << pool.size() << " relations).\n"
            << "# Derivation: each base relation fixes a truth assignment over the 16\n"
            << "# order literals a<=b, b<=a, a=b, a!=b for the four cross-endpoint\n"
            << "# pairs of two intervals. A relation is listed here iff its minimal\n"
            << "# CNF over those literals needs a clause of three or more literals\n"
            << "# (minimal width = max over excluded base relations of the smallest\n"
            << "# implicate clause falsified by it, an exact set cover).\n"
            << "# Regenerate with: allendl pool\n";
    }
    for (const Relation& r : pool) {
        out << to_string(r) << '\n';
    }
    return out.str();
}

namespace {

// Classic Bellman-Ford feasibility: no negative cycle in the constraint
// graph. Deliberately non-incremental and independent of DiffEngine.
bool bellman_ford_feasible(int num_vars, const std::vector<DifferenceConstraint>& cs) {
    std::vector<std::int64_t> dist(static_cast<std::size_t>(num_vars), 0);
    for (int pass = 0; pass < num_vars; ++pass) {
        bool changed = false;
        for (const auto& c : cs) {
            if (dist[static_cast<std::size_t>(c.y)] + c.k < dist[static_cast<std::size_t>(c.x)]) {
                dist[static_cast<std::size_t>(c.x)] = dist[static_cast<std::size_t>(c.y)] + c.k;
                changed = true;
            }
        }
        if (!changed) {
            return true;
        }
    }
    for (const auto& c : cs) {
        if (dist[static_cast<std::size_t>(c.y)] + c.k < dist[static_cast<std::size_t>(c.x)]) {
            return false;
        }
    }
    return true;
}

}  // namespace

OracleReport oracle(const Qcn& q, const OracleLimits& limits) {
    if (q.num_variables() > limits.max_n) {
        throw std::invalid_argument("oracle: instance has n = " +
                                    std::to_string(q.num_variables()) + ", cap is max_n = " +
                                    std::to_string(limits.max_n));
    }
    const std::vector<EdgeRef> edges = q.edges();
    std::vector<std::vector<BaseRelation>> members;
    members.reserve(edges.size());
    std::uint64_t product = 1;
    bool any_empty = false;
    for (const EdgeRef& e : edges) {
        members.push_back(q.label(e.i, e.j).members());
        const std::uint64_t size = members.back().size();
        if (size == 0) {
            any_empty = true;
            continue;
        }
        if (product > limits.max_scenarios / size) {
            throw std::invalid_argument("oracle: scenario count exceeds cap of " +
                                        std::to_string(limits.max_scenarios));
        }
        product *= size;
    }

    OracleReport report;
    report.unions.reserve(edges.size());
    for (const EdgeRef& e : edges) {
        report.unions.push_back(EdgeRelation{e, Relation::none()});
    }
    if (any_empty) {
        return report;  // no scenario can pick from an empty label
    }

    const int n = q.num_variables();
    std::vector<DifferenceConstraint> base;
    for (int i = 0; i < n; ++i) {
        base.push_back(DifferenceConstraint{start_var(i), end_var(i),
                                            validity_bound(limits.allow_point_intervals)});
    }

    std::vector<std::size_t> pick(edges.size(), 0);
    std::vector<std::optional<BaseRelation>> agreed(edges.size());
    std::vector<char> diverged(edges.size(), 0);

    while (true) {
        std::vector<DifferenceConstraint> cs = base;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (const auto& c : relation_template(members[e][pick[e]])) {
                cs.push_back(instantiate(c, edges[e].i, edges[e].j));
            }
        }
        if (bellman_ford_feasible(2 * n, cs)) {
            ++report.scenario_count;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const BaseRelation chosen = members[e][pick[e]];
                report.unions[e].rels.add(chosen);
                if (diverged[e]) {
                    continue;
                }
                if (!agreed[e]) {
                    agreed[e] = chosen;
                } else if (*agreed[e] != chosen) {
                    agreed[e] = std::nullopt;
                    diverged[e] = 1;
                }
            }
        }
        // odometer over the label members
        std::size_t e = 0;
        for (; e < edges.size(); ++e) {
            if (++pick[e] < members[e].size()) {
                break;
            }
            pick[e] = 0;
        }
        if (e == edges.size()) {
            break;
        }
    }

    report.sat = report.scenario_count > 0;
    if (report.sat) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (agreed[e]) {
                report.backbone.push_back(EdgeChoice{edges[e].i, edges[e].j, *agreed[e]});
            }
        }
    }
    return report;
}

}  // namespace allendl
