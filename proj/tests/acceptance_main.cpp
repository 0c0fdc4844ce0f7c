// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, non-zero exit when
// any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "allendl/algebra.hpp"
#include "allendl/diff_engine.hpp"
#include "allendl/instances.hpp"
#include "allendl/network.hpp"
#include "allendl/solver.hpp"
#include "helpers.hpp"

using namespace allendl;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) {
        detail = what;
    }
    return ok;
}

// ---- 1: difference-engine micro examples ----------------------------------

bool criterion1(std::string& detail) {
    bool ok = true;
    DiffEngine eng(3);  // x=0, y=1, z=2
    ok &= expect(!eng.assert_constraint(1, 0, 1), "y-x<=1 rejected", detail);
    ok &= expect(!eng.assert_constraint(2, 1, 1), "z-y<=1 rejected", detail);
    const auto conflict = eng.assert_constraint(0, 2, -3);
    ok &= expect(conflict.has_value(), "S1 accepted but is unsatisfiable", detail);
    if (conflict) {
        ok &= expect(conflict->bound_sum() == -1, "conflict bounds do not sum to -1", detail);
        ok &= expect(test::valid_conflict(*conflict), "conflict is not a chained cycle", detail);
    }

    DiffEngine eng2(3);
    ok &= expect(!eng2.assert_constraint(1, 0, 1), "S2 first", detail);
    ok &= expect(!eng2.assert_constraint(2, 1, 2), "S2 second", detail);
    ok &= expect(!eng2.assert_constraint(0, 2, -3), "S2 third", detail);
    const Assignment tau = eng2.extract_assignment(0);
    ok &= expect(tau[0] == 0, "reference variable not at 0", detail);
    ok &= expect(test::satisfies_all(tau, eng2.active_constraints()),
                 "assignment violates S2", detail);
    return ok;
}

// ---- 2: the worked example network ----------------------------------------

const char* kFig1 =
    "4\n0 1 (p m)\n0 3 (d s fi)\n1 2 (oi)\n1 3 (oi m)\n2 3 (pi eq)\n.\n";

bool criterion2(std::string& detail) {
    bool ok = true;
    const Qcn q = parse_qcn(kFig1);
    Solver solver(q);
    const SolveResult res = solver.solve();
    ok &= expect(res.status == Status::sat, "example network not sat", detail);
    if (res.scenario && res.solution) {
        ok &= expect(test::witness_matches(*res.scenario, *res.solution),
                     "witness does not realize the scenario", detail);
    } else {
        ok = false;
    }

    // the scenario read off the drawing: 0 m 1, 0 d 3, 1 oi 2, 1 oi 3, 2 eq 3
    Qcn forced(4);
    forced.restrict_label(0, 1, Relation::singleton(BaseRelation::m));
    forced.restrict_label(0, 3, Relation::singleton(BaseRelation::d));
    forced.restrict_label(1, 2, Relation::singleton(BaseRelation::oi));
    forced.restrict_label(1, 3, Relation::singleton(BaseRelation::oi));
    forced.restrict_label(2, 3, Relation::singleton(BaseRelation::eq));
    for (const EdgeRef& e : forced.edges()) {
        ok &= expect(forced.label(e.i, e.j).subset_of(q.label(e.i, e.j)),
                     "forced scenario leaves the labels", detail);
    }
    const OracleReport report = oracle(forced);
    ok &= expect(report.sat && report.scenario_count >= 1,
                 "oracle rejects the drawn scenario", detail);
    return ok;
}

// ---- 3: algebra self-check --------------------------------------------------

bool criterion3(std::string& detail) {
    bool ok = true;
    const CompositionTable& t = CompositionTable::strict();
    for (BaseRelation b : all_base_relations()) {
        ok &= expect(t.compose(b, BaseRelation::eq) == Relation::singleton(b) &&
                         t.compose(BaseRelation::eq, b) == Relation::singleton(b),
                     "identity law fails", detail);
        ok &= expect(t.compose(b, converse(b)).contains(BaseRelation::eq),
                     "eq missing from b;b^-1", detail);
        for (BaseRelation b2 : all_base_relations()) {
            ok &= expect(!t.compose(b, b2).empty(), "empty table entry", detail);
            ok &= expect(converse(t.compose(b, b2)) == t.compose(converse(b2), converse(b)),
                         "converse duality fails", detail);
        }
    }
    ok &= expect(t.compose(BaseRelation::p, BaseRelation::p) ==
                     Relation::singleton(BaseRelation::p),
                 "p;p != {p}", detail);
    ok &= expect(t.compose(BaseRelation::m, BaseRelation::m) ==
                     Relation::singleton(BaseRelation::p),
                 "m;m != {p}", detail);
    ok &= expect(t.compose(BaseRelation::p, BaseRelation::pi).is_universal(), "p;pi != B",
                 detail);
    return ok;
}

// ---- 4 + 7: oracle equivalence and the invariant harness -------------------

struct SatInstance {
    Qcn q;
    Scenario scenario;
};

std::vector<SatInstance> g_sat_instances;  // collected for criterion 7

bool criterion4(std::string& detail) {
    bool ok = true;
    int made = 0;
    std::uint64_t seed = 0;
    int sat_count = 0;
    while (made < 200 && ok) {
        ++seed;
        const int n = 3 + static_cast<int>(seed % 3);
        const double d = 1.0 + 0.5 * static_cast<double>(seed % 4);
        const double s = (seed % 3 == 0) ? 4.0 : ((seed % 3 == 1) ? 6.5 : 8.0);
        const Qcn q = generate_a(GenSpecA{n, std::min(d, static_cast<double>(n - 1)), s, seed});
        if (test::label_product(q) > 200000) {
            continue;  // stay inside the oracle caps and the time budget
        }
        ++made;

        const OracleReport truth = oracle(q);
        Solver solver(q);
        const SolveResult res = solver.solve();
        ok &= expect((res.status == Status::sat) == truth.sat, "sat/unsat mismatch", detail);

        const EnumerateResult en = solver.enumerate(truth.scenario_count + 1);
        ok &= expect(en.exhausted && en.scenarios.size() == truth.scenario_count,
                     "scenario count mismatch", detail);

        if (truth.sat) {
            ++sat_count;
            const BackboneResult bb = solver.backbone();
            ok &= expect(bb.status == Status::sat && bb.backbone == truth.backbone,
                         "backbone mismatch", detail);
            const UnionResult un = solver.union_labels();
            ok &= expect(un.status == Status::sat && un.unions == truth.unions,
                         "union mismatch", detail);
            g_sat_instances.push_back(SatInstance{q, *res.scenario});
        }
        if (!ok) {
            detail += " (seed " + std::to_string(seed) + ")";
        }
    }
    std::ostringstream note;
    note << "200 instances, " << sat_count << " sat";
    if (ok) {
        detail = note.str();
    }
    return ok;
}

// ---- 5: difference-engine fuzz ----------------------------------------------

bool criterion5(std::string& detail) {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 500 && ok; ++seed) {
        std::mt19937_64 rng(seed);
        auto below = [&rng](int n) {
            return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        };
        const int num_vars = 2 + below(7);  // up to 8 variables
        DiffEngine eng(num_vars);
        std::vector<std::vector<DifferenceConstraint>> frames{{}};
        std::vector<Mark> marks;
        auto active = [&] {
            std::vector<DifferenceConstraint> all;
            for (const auto& f : frames) {
                all.insert(all.end(), f.begin(), f.end());
            }
            return all;
        };
        for (int step = 0; step < 50 && ok; ++step) {
            const int action = below(10);
            if (action < 6) {
                const DifferenceConstraint c{below(num_vars), below(num_vars), below(7) - 3};
                auto with_c = active();
                with_c.push_back(c);
                const bool oracle_ok = test::fw_feasible(num_vars, with_c);
                const auto conflict = eng.assert_constraint(c);
                ok &= expect(oracle_ok == !conflict.has_value(),
                             "incremental feasibility diverges from the oracle", detail);
                if (conflict) {
                    ok &= expect(test::valid_conflict(*conflict), "malformed conflict", detail);
                } else {
                    frames.back().push_back(c);
                }
            } else if (action < 8) {
                marks.push_back(eng.push());
                frames.emplace_back();
            } else if (!marks.empty()) {
                eng.pop(marks.back());
                marks.pop_back();
                frames.pop_back();
            }
            ok &= expect(test::satisfies_all(eng.extract_assignment(0), active()),
                         "assignment violates an active constraint", detail);
        }
        if (!ok) {
            detail += " (seed " + std::to_string(seed) + ")";
        }
    }
    return ok;
}

// ---- 6 + 7: phase transition sweep ------------------------------------------

bool criterion6(std::string& detail) {
    bool ok = true;
    std::ostringstream sweep;
    std::optional<int> crossover;
    for (int d = 2; d <= 20; ++d) {
        int sat = 0;
        for (int k = 0; k < 10; ++k) {
            const Qcn q = generate_a(
                GenSpecA{30, static_cast<double>(d), 6.5, static_cast<std::uint64_t>(1 + k)});
            Solver solver(q);
            const SolveResult res = solver.solve();
            if (res.status == Status::sat) {
                ++sat;
                g_sat_instances.push_back(SatInstance{q, *res.scenario});
            }
        }
        const double frac = sat / 10.0;
        sweep << 'd' << d << '=' << frac << ' ';
        if (!crossover && frac <= 0.5) {
            crossover = d;
        }
        if (d <= 4) {
            ok &= expect(frac >= 0.9, "sat fraction below 0.9 at d=" + std::to_string(d), detail);
        }
        if (d >= 18) {
            ok &= expect(frac <= 0.1, "sat fraction above 0.1 at d=" + std::to_string(d), detail);
        }
    }
    ok &= expect(crossover.has_value(), "no crossover below 0.5 in the sweep", detail);
    if (ok) {
        detail = "crossover at d=" + std::to_string(*crossover) + "; " + sweep.str();
    }
    return ok;
}

bool criterion7(std::string& detail) {
    bool ok = true;
    std::size_t checked = 0;
    for (const SatInstance& inst : g_sat_instances) {
        Solver solver(inst.q);
        const UnionResult un = solver.union_labels();
        ok &= expect(un.status == Status::sat, "union unsat on a sat instance", detail);
        if (un.status != Status::sat) {
            break;
        }
        auto union_at = [&](int i, int j) {
            for (const EdgeRelation& u : un.unions) {
                if (u.edge.i == i && u.edge.j == j) {
                    return u.rels;
                }
            }
            return Relation::none();
        };
        for (const EdgeChoice& c : inst.scenario.choices) {
            ok &= expect(union_at(c.i, c.j).contains(c.rel),
                         "returned scenario choice outside the union", detail);
        }
        const BackboneResult bb = solver.backbone();
        ok &= expect(bb.status == Status::sat, "backbone unsat on a sat instance", detail);
        for (const EdgeChoice& c : bb.backbone) {
            ok &= expect(union_at(c.i, c.j).contains(c.rel), "backbone outside the union",
                         detail);
        }
        ++checked;
        if (!ok) {
            break;
        }
    }
    if (ok) {
        detail = std::to_string(checked) + " satisfiable instances checked";
    }
    return ok;
}

// ---- 8: out-of-scope results stated explicitly ------------------------------

bool criterion8(std::string& detail) {
    detail =
        "absolute runtimes and third-party reasoner comparisons are not "
        "reproduced here; correctness is covered by the oracle-equivalence, "
        "fuzz, and invariant criteria, and `allendl bench` emits the "
        "per-degree statistics for scaling studies";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "difference-engine micro examples", criterion1},
        {2, "worked example network", criterion2},
        {3, "algebra self-check", criterion3},
        {4, "oracle equivalence on 200 small instances", criterion4},
        {5, "difference-engine fuzz vs all-pairs oracle", criterion5},
        {6, "phase transition sweep A(n=30)", criterion6},
        {7, "backbone/union invariant harness", criterion7},
        {8, "non-reproduced results stated", criterion8},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title
                  << " (" << ms << " ms)";
        if (!detail.empty()) {
            std::cout << " -- " << detail;
        }
        std::cout << '\n' << std::flush;
        if (!pass) {
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
