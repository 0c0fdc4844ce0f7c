// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <set>

#include "allendl/instances.hpp"
#include "allendl/solver.hpp"
#include "helpers.hpp"

using namespace allendl;

namespace {

const char* kFig1 =
    "4\n0 1 (p m)\n0 3 (d s fi)\n1 2 (oi)\n1 3 (oi m)\n2 3 (pi eq)\n.\n";

Qcn unsat_triangle() {
    Qcn q(3);
    q.restrict_label(0, 1, Relation::singleton(BaseRelation::p));
    q.restrict_label(1, 2, Relation::singleton(BaseRelation::p));
    q.restrict_label(0, 2, Relation::singleton(BaseRelation::pi));
    return q;
}

Qcn single_edge_pm() {
    Qcn q(2);
    Relation pm = Relation::singleton(BaseRelation::p);
    pm.add(BaseRelation::m);
    q.restrict_label(0, 1, pm);
    return q;
}

bool scenario_in_labels(const Scenario& s, const Qcn& q) {
    return std::all_of(s.choices.begin(), s.choices.end(), [&](const EdgeChoice& c) {
        return q.label(c.i, c.j).contains(c.rel);
    });
}

std::set<std::vector<BaseRelation>> scenario_set(const EnumerateResult& r) {
    std::set<std::vector<BaseRelation>> out;
    for (const Scenario& s : r.scenarios) {
        std::vector<BaseRelation> v;
        for (const EdgeChoice& c : s.choices) {
            v.push_back(c.rel);
        }
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("the example network is satisfiable with a valid witness") {
    const Qcn q = parse_qcn(kFig1);
    Solver solver(q);
    const SolveResult res = solver.solve();
    REQUIRE(res.status == Status::sat);
    REQUIRE(res.scenario);
    REQUIRE(res.solution);
    CHECK(scenario_in_labels(*res.scenario, q));
    CHECK(test::witness_matches(*res.scenario, *res.solution));
    CHECK(res.solution->intervals[0].first == 0);  // reference point
}

TEST_CASE("the known solution scenario of the example network is feasible") {
    // the scenario read off the example drawing: 0 m 1, 0 d 3, 1 oi 2, 1 oi 3, 2 eq 3
    Qcn forced(4);
    forced.restrict_label(0, 1, Relation::singleton(BaseRelation::m));
    forced.restrict_label(0, 3, Relation::singleton(BaseRelation::d));
    forced.restrict_label(1, 2, Relation::singleton(BaseRelation::oi));
    forced.restrict_label(1, 3, Relation::singleton(BaseRelation::oi));
    forced.restrict_label(2, 3, Relation::singleton(BaseRelation::eq));
    // each forced choice is inside the example's label
    const Qcn q = parse_qcn(kFig1);
    for (const EdgeRef& e : forced.edges()) {
        CHECK(forced.label(e.i, e.j).subset_of(q.label(e.i, e.j)));
    }
    CHECK(Solver(forced).solve().status == Status::sat);
}

TEST_CASE("an incompatible triangle is unsat") {
    CHECK(Solver(unsat_triangle()).solve().status == Status::unsat);
    SolveOptions raw;
    raw.use_closure = false;
    CHECK(Solver(unsat_triangle(), raw).solve().status == Status::unsat);
}

TEST_CASE("a single two-valued edge has exactly two scenarios") {
    Solver solver(single_edge_pm());
    const SolveResult res = solver.solve();
    REQUIRE(res.status == Status::sat);
    CHECK((res.scenario->choices[0].rel == BaseRelation::p ||
           res.scenario->choices[0].rel == BaseRelation::m));

    const EnumerateResult en = solver.enumerate(10);
    CHECK(en.status == Status::sat);
    CHECK(en.scenarios.size() == 2);
    CHECK(en.exhausted);
    for (std::size_t i = 0; i < en.scenarios.size(); ++i) {
        CHECK(test::witness_matches(en.scenarios[i], en.solutions[i]));
    }

    const BackboneResult bb = solver.backbone();
    CHECK(bb.status == Status::sat);
    CHECK(bb.backbone.empty());

    const UnionResult un = solver.union_labels();
    CHECK(un.status == Status::sat);
    REQUIRE(un.unions.size() == 1);
    CHECK(un.unions[0].rels == single_edge_pm().label(0, 1));
}

TEST_CASE("a singleton edge is its own backbone") {
    Qcn q(2);
    q.restrict_label(0, 1, Relation::singleton(BaseRelation::p));
    const BackboneResult bb = Solver(q).backbone();
    REQUIRE(bb.status == Status::sat);
    REQUIRE(bb.backbone.size() == 1);
    CHECK(bb.backbone[0] == EdgeChoice{0, 1, BaseRelation::p});
}

TEST_CASE("union forced by composition in a half-constrained triangle") {
    Qcn q(3);
    q.restrict_label(0, 1, Relation::singleton(BaseRelation::p));
    q.restrict_label(1, 2, Relation::singleton(BaseRelation::p));
    const UnionResult un = Solver(q).union_labels();
    REQUIRE(un.status == Status::sat);
    for (const EdgeRelation& u : un.unions) {
        CHECK(u.rels == Relation::singleton(BaseRelation::p));
    }
}

TEST_CASE("unsat networks report unsat from every mode") {
    Solver solver(unsat_triangle());
    CHECK(solver.backbone().status == Status::unsat);
    CHECK(solver.union_labels().status == Status::unsat);
    const EnumerateResult en = solver.enumerate(5);
    CHECK(en.status == Status::unsat);
    CHECK(en.scenarios.empty());
}

TEST_CASE("an explicitly empty label is trivially unsat") {
    const Qcn q = parse_qcn("2\n0 1 (p)\n1 0 (p)\n.");
    CHECK(Solver(q).solve().status == Status::unsat);
}

TEST_CASE("a network with no stored edges has one empty scenario") {
    const Qcn q = parse_qcn("3\n.");
    Solver solver(q);
    const SolveResult res = solver.solve();
    REQUIRE(res.status == Status::sat);
    CHECK(res.scenario->choices.empty());
    CHECK(res.solution->intervals.size() == 3);
    for (const auto& [start, end] : res.solution->intervals) {
        CHECK(start < end);
    }
    CHECK(Solver(q).enumerate(5).scenarios.size() == 1);
}

TEST_CASE("point intervals rescue a meets-chain triangle") {
    Qcn q(3);
    q.restrict_label(0, 1, Relation::singleton(BaseRelation::m));
    q.restrict_label(1, 2, Relation::singleton(BaseRelation::m));
    q.restrict_label(0, 2, Relation::singleton(BaseRelation::m));
    CHECK(Solver(q).solve().status == Status::unsat);

    SolveOptions point;
    point.allow_point_intervals = true;
    const SolveResult res = Solver(q, point).solve();
    REQUIRE(res.status == Status::sat);
    // the middle interval collapses to a point
    const auto& mid = res.solution->intervals[1];
    CHECK(mid.first == mid.second);
}

TEST_CASE("solver agrees with the oracle on random small instances") {
    int sat_seen = 0;
    int unsat_seen = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 3 + static_cast<int>(seed % 3);
        const double d = std::min(1.0 + static_cast<double>(seed % 4) * 0.5,
                                  static_cast<double>(n - 1));
        const double s = (seed % 2 == 0) ? 4.0 : 6.5;
        const Qcn q = test::small_random_qcn(n, d, s, seed);
        if (test::label_product(q) > 200000) {
            continue;  // keep the exhaustive comparison quick
        }
        const OracleReport truth = oracle(q);
        Solver solver(q);

        CHECK((solver.solve().status == Status::sat) == truth.sat);
        const EnumerateResult en = solver.enumerate(truth.scenario_count + 1);
        CHECK(en.scenarios.size() == truth.scenario_count);
        CHECK(en.exhausted);

        if (truth.sat) {
            ++sat_seen;
            const BackboneResult bb = solver.backbone();
            REQUIRE(bb.status == Status::sat);
            CHECK(bb.backbone == truth.backbone);
            const UnionResult un = solver.union_labels();
            REQUIRE(un.status == Status::sat);
            CHECK(un.unions == truth.unions);
        } else {
            ++unsat_seen;
        }
    }
    CHECK(sat_seen > 0);
    CHECK(unsat_seen > 0);
}

TEST_CASE("closure preprocessing never changes answers") {
    for (std::uint64_t seed = 50; seed <= 70; ++seed) {
        const Qcn q = test::small_random_qcn(4, 2.0, 6.5, seed);
        if (test::label_product(q) > 50000) {
            continue;
        }
        SolveOptions with;
        SolveOptions without;
        without.use_closure = false;

        Solver a(q, with);
        Solver b(q, without);
        const EnumerateResult ea = a.enumerate(100000);
        const EnumerateResult eb = b.enumerate(100000);
        CHECK(ea.status == eb.status);
        CHECK(scenario_set(ea) == scenario_set(eb));
        if (ea.status == Status::sat) {
            CHECK(a.backbone().backbone == b.backbone().backbone);
            CHECK(a.union_labels().unions == b.union_labels().unions);
        }
    }
}

TEST_CASE("forward checking is an optimization, not a semantics change") {
    for (std::uint64_t seed = 80; seed <= 90; ++seed) {
        const Qcn q = test::small_random_qcn(4, 2.5, 6.5, seed);
        if (test::label_product(q) > 50000) {
            continue;
        }
        SolveOptions no_fc;
        no_fc.forward_check = false;
        Solver a(q);
        Solver b(q, no_fc);
        CHECK(scenario_set(a.enumerate(100000)) == scenario_set(b.enumerate(100000)));
    }
}

TEST_CASE("identical runs give identical results") {
    const Qcn q = test::small_random_qcn(5, 3.0, 6.5, 7);
    Solver s1(q);
    Solver s2(q);
    const SolveResult r1 = s1.solve();
    const SolveResult r2 = s2.solve();
    CHECK(r1.status == r2.status);
    CHECK(r1.scenario == r2.scenario);
    if (r1.solution) {
        CHECK(r1.solution->intervals == r2.solution->intervals);
    }
    CHECK(r1.stats.decisions == r2.stats.decisions);
    CHECK(r1.stats.conflicts == r2.stats.conflicts);
}

TEST_CASE("scenario choices and backbone stay inside the union") {
    for (std::uint64_t seed = 100; seed <= 120; ++seed) {
        const Qcn q = test::small_random_qcn(4, 2.5, 6.5, seed);
        Solver solver(q);
        const SolveResult res = solver.solve();
        if (res.status != Status::sat) {
            continue;
        }
        const UnionResult un = solver.union_labels();
        REQUIRE(un.status == Status::sat);
        auto union_at = [&](int i, int j) {
            for (const EdgeRelation& u : un.unions) {
                if (u.edge.i == i && u.edge.j == j) {
                    return u.rels;
                }
            }
            return Relation::none();
        };
        for (const EdgeChoice& c : res.scenario->choices) {
            CHECK(union_at(c.i, c.j).contains(c.rel));
        }
        for (const EdgeChoice& c : solver.backbone().backbone) {
            CHECK(union_at(c.i, c.j).contains(c.rel));
        }
    }
}

TEST_CASE("a zero timeout reports aborted, never unsat") {
    SolveOptions opts;
    opts.timeout_s = 0.0;
    Solver solver(parse_qcn(kFig1), opts);
    const SolveResult res = solver.solve();
    CHECK(res.status == Status::aborted);
    CHECK_FALSE(res.scenario);
    CHECK(Solver(parse_qcn(kFig1), opts).backbone().status == Status::aborted);
    CHECK(Solver(parse_qcn(kFig1), opts).union_labels().status == Status::aborted);
}

TEST_CASE("enumerate requires a positive limit") {
    Solver solver(single_edge_pm());
    CHECK_THROWS_AS(solver.enumerate(0), std::invalid_argument);
}
