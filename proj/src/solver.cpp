// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <climits>
#include <stdexcept>

namespace allendl {

namespace {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

struct DiffAtom {
    int edge;
    BaseRelation rel;
};

// Set of decision depths, one bit per recursion level.
class DepthSet {
  public:
    DepthSet() = default;
    explicit DepthSet(std::size_t words) : bits_(words, 0) {}

    void clear() { std::fill(bits_.begin(), bits_.end(), 0); }
    void add(int d) {
        if (d >= 0) {
            bits_[static_cast<std::size_t>(d) >> 6] |= std::uint64_t{1} << (d & 63);
        }
    }
    void remove(int d) {
        if (d >= 0) {
            bits_[static_cast<std::size_t>(d) >> 6] &= ~(std::uint64_t{1} << (d & 63));
        }
    }
    bool contains(int d) const {
        return d >= 0 &&
               ((bits_[static_cast<std::size_t>(d) >> 6] >> (d & 63)) & 1) != 0;
    }
    void merge(const DepthSet& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            bits_[w] |= o.bits_[w];
        }
    }

  private:
    std::vector<std::uint64_t> bits_;
};

enum class RunStatus { found_all, stopped, aborted };

// One depth-first search over the choice edges. The engine holds the
// interval-validity constraints at the root and the decided templates above
// it; candidate sets are trailed by depth in a flat buffer.
//
// With opts.backjump, every conflict cycle is mapped back to the decisions
// whose constraints appear in it; a subtree that fails independently of a
// decision lets the search return past it. Solution-bearing subtrees and
// differ-atom pruning disable jumping, so enumeration stays exhaustive.
class SearchCore {
  public:
    SearchCore(int num_vars, const std::vector<EdgeRef>& edges, std::vector<Relation> labels,
               const SolveOptions& opts, Deadline deadline, SolveStats& stats,
               std::vector<DiffAtom> differ_atoms = {})
        : edges_(edges),
          cand_(std::move(labels)),
          opts_(opts),
          deadline_(deadline),
          stats_(stats),
          differ_atoms_(std::move(differ_atoms)),
          eng_(2 * num_vars),
          decided_(edges.size(), 0),
          choice_(edges.size(), BaseRelation::eq),
          weights_(edges.size(), 0),
          cand_trail_(edges.size() * (edges.size() + 1)) {
        const std::size_t words = (edges.size() + 1 + 63) / 64;
        node_r_.assign(edges.size() + 1, DepthSet(words));
        fail_r_.assign(edges.size() + 1, DepthSet(words));
        elim_reason_.assign(edges.size(), DepthSet(words));

        const std::int64_t vb = validity_bound(opts.allow_point_intervals);
        for (int i = 0; i < num_vars; ++i) {
            const auto conflict = eng_.assert_constraint(start_var(i), end_var(i), vb);
            assert(!conflict);
            (void)conflict;
            ++stats_.propagations;
            origin_depth_.push_back(-1);  // root constraints blame nobody
        }
    }

    // on_solution(choices, engine) -> false to stop enumerating.
    template <class F>
    RunStatus run(F&& on_solution) {
        for (const Relation& r : cand_) {
            if (r.empty()) {
                return RunStatus::found_all;  // trivially unsat
            }
        }
        if (!can_differ()) {
            return RunStatus::found_all;
        }
        const SubResult res = dfs(0, on_solution);
        if (aborted_) {
            return RunStatus::aborted;
        }
        return res.stopped ? RunStatus::stopped : RunStatus::found_all;
    }

  private:
    struct SubResult {
        bool stopped = false;
        bool saw_solution = false;
        bool no_jump = false;  // reasons incomplete, the parent must not jump
    };

    bool out_of_time() {
        if (deadline_ && Clock::now() >= *deadline_) {
            aborted_ = true;
            return true;
        }
        return false;
    }

    int pick_edge() const {
        int best = -1;
        int best_size = INT_MAX;
        std::int64_t best_weight = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (decided_[e]) {
                continue;
            }
            const int sz = cand_[e].size();
            if (opts_.order == DecisionOrder::weighted_degree) {
                // minimize size/(1 + weight) without division
                if (best < 0 || static_cast<std::int64_t>(sz) * (1 + best_weight) <
                                    static_cast<std::int64_t>(best_size) * (1 + weights_[e])) {
                    best = static_cast<int>(e);
                    best_size = sz;
                    best_weight = weights_[e];
                }
            } else if (sz < best_size) {
                best = static_cast<int>(e);
                best_size = sz;
            }
        }
        return best;
    }

    int origin_of(int edge_id, int depth) const {
        if (edge_id < 0 || static_cast<std::size_t>(edge_id) >= origin_depth_.size()) {
            return depth;  // the failing constraint or an in-flight probe edge
        }
        return origin_depth_[edge_id];
    }

    void blame(const Conflict& conflict, int depth, DepthSet& into) const {
        for (const int id : conflict.edge_ids) {
            into.add(origin_of(id, depth));
        }
    }

    // Asserts b's template for edge e, recording origins; on conflict the
    // engine is popped by the caller via its mark.
    bool assert_decision(int e, BaseRelation b, int depth, DepthSet& reasons) {
        for (const auto& c : relation_template(b)) {
            const auto conflict =
                eng_.assert_constraint(instantiate(c, edges_[e].i, edges_[e].j));
            if (conflict) {
                ++stats_.conflicts;
                weights_[static_cast<std::size_t>(e)] += 1;
                blame(*conflict, depth, reasons);
                return false;
            }
            ++stats_.propagations;
            origin_depth_.push_back(depth);
        }
        return true;
    }

    // Candidate templates already satisfied by the current potentials are
    // consistent without touching the engine; the rest get a push/assert/pop
    // probe. On failure the conflict origins are merged into blame_into.
    bool probe(int e, BaseRelation b, int depth, DepthSet& blame_into) {
        const auto& tpl = relation_template(b);
        bool trivial = true;
        for (const auto& c : tpl) {
            if (!eng_.trivially_consistent(instantiate(c, edges_[e].i, edges_[e].j))) {
                trivial = false;
                break;
            }
        }
        if (trivial) {
            return true;
        }
        const Mark mark = eng_.push();
        bool ok = true;
        for (const auto& c : tpl) {
            const auto conflict =
                eng_.assert_constraint(instantiate(c, edges_[e].i, edges_[e].j));
            if (conflict) {
                blame(*conflict, depth, blame_into);
                ok = false;
                break;
            }
            ++stats_.propagations;
        }
        eng_.pop(mark);
        return ok;
    }

    bool forward_check(int depth, DepthSet& fail_reason) {
        for (std::size_t f = 0; f < edges_.size(); ++f) {
            if (decided_[f]) {
                continue;
            }
            Relation keep;
            bool snapshot_taken = false;
            for (BaseRelation b : all_base_relations()) {
                if (!cand_[f].contains(b)) {
                    continue;
                }
                DepthSet& blame_into = fail_r_[static_cast<std::size_t>(depth) + 1];
                blame_into.clear();
                if (probe(static_cast<int>(f), b, depth, blame_into)) {
                    keep.add(b);
                    continue;
                }
                ++stats_.conflicts;
                weights_[f] += 1;
                if (!snapshot_taken) {
                    elim_trail_.emplace_back(f, elim_reason_[f]);
                    snapshot_taken = true;
                }
                elim_reason_[f].merge(blame_into);
            }
            if (keep.empty()) {
                fail_reason.merge(elim_reason_[f]);
                return false;
            }
            cand_[f] = keep;
        }
        return true;
    }

    void undo_elims(std::size_t mark) {
        while (elim_trail_.size() > mark) {
            auto& [edge, saved] = elim_trail_.back();
            elim_reason_[edge] = std::move(saved);
            elim_trail_.pop_back();
        }
    }

    // True while some atom can still end up decided differently.
    bool can_differ() const {
        if (differ_atoms_.empty()) {
            return true;
        }
        for (const DiffAtom& a : differ_atoms_) {
            const auto e = static_cast<std::size_t>(a.edge);
            if (decided_[e]) {
                if (choice_[e] != a.rel) {
                    return true;
                }
            } else if (!cand_[e].subset_of(Relation::singleton(a.rel))) {
                return true;
            }
        }
        return false;
    }

    void save_cand(std::size_t depth) {
        Relation* row = cand_trail_.data() + depth * edges_.size();
        std::copy(cand_.begin(), cand_.end(), row);
    }

    void restore_cand(std::size_t depth) {
        const Relation* row = cand_trail_.data() + depth * edges_.size();
        std::copy(row, row + edges_.size(), cand_.begin());
    }

    template <class F>
    SubResult dfs(int depth, F& on_solution) {
        if (out_of_time()) {
            return SubResult{true, false, true};
        }
        const int e = pick_edge();
        if (e < 0) {
            const bool go_on =
                on_solution(static_cast<const std::vector<BaseRelation>&>(choice_), eng_);
            return SubResult{!go_on, true, true};
        }
        const auto eu = static_cast<std::size_t>(e);
        const auto du = static_cast<std::size_t>(depth);
        save_cand(du);
        const std::size_t frame_elims = elim_trail_.size();
        const Relation options = cand_[eu];
        DepthSet& node_r = node_r_[du];
        node_r.clear();
        bool node_saw = false;
        bool node_no_jump = false;

        for (BaseRelation b : all_base_relations()) {
            if (!options.contains(b)) {
                continue;
            }
            if (out_of_time()) {
                undo_elims(frame_elims);
                return SubResult{true, false, true};
            }
            ++stats_.decisions;
            const Mark mark = eng_.push();
            const std::size_t cand_elims = elim_trail_.size();
            if (assert_decision(e, b, depth, node_r)) {
                decided_[eu] = 1;
                choice_[eu] = b;
                cand_[eu] = Relation::singleton(b);
                bool viable = true;
                if (!can_differ()) {
                    viable = false;
                    node_no_jump = true;
                }
                if (viable && opts_.forward_check) {
                    DepthSet& fc_fail = fail_r_[du];
                    fc_fail.clear();
                    if (!forward_check(depth, fc_fail)) {
                        viable = false;
                        node_r.merge(fc_fail);
                    } else if (!can_differ()) {
                        viable = false;
                        node_no_jump = true;
                    }
                }
                if (viable) {
                    const SubResult child = dfs(depth + 1, on_solution);
                    if (child.stopped) {
                        decided_[eu] = 0;
                        undo_elims(frame_elims);
                        eng_.pop(mark);
                        origin_depth_.resize(mark.edges);
                        return child;
                    }
                    if (child.saw_solution) {
                        node_saw = true;
                        node_no_jump = true;
                    } else if (opts_.backjump && !child.no_jump && !node_saw &&
                               !node_r_[du + 1].contains(depth)) {
                        // the subtree failed independently of this decision:
                        // hand its reasons straight to an ancestor
                        decided_[eu] = 0;
                        restore_cand(du);
                        undo_elims(frame_elims);
                        eng_.pop(mark);
                        origin_depth_.resize(mark.edges);
                        node_r = node_r_[du + 1];
                        return SubResult{false, false, false};
                    } else {
                        node_r.merge(node_r_[du + 1]);
                        if (child.no_jump) {
                            node_no_jump = true;
                        }
                    }
                }
                decided_[eu] = 0;
                restore_cand(du);
            }
            undo_elims(cand_elims);
            eng_.pop(mark);
            origin_depth_.resize(mark.edges);
        }
        undo_elims(frame_elims);
        // candidates pruned from e by ancestor forward checks could have
        // succeeded; their removal causes are part of this failure
        node_r.merge(elim_reason_[eu]);
        node_r.remove(depth);
        return SubResult{false, node_saw, node_no_jump};
    }

    const std::vector<EdgeRef>& edges_;
    std::vector<Relation> cand_;
    const SolveOptions& opts_;
    Deadline deadline_;
    SolveStats& stats_;
    std::vector<DiffAtom> differ_atoms_;
    DiffEngine eng_;
    std::vector<char> decided_;
    std::vector<BaseRelation> choice_;
    std::vector<std::int64_t> weights_;
    std::vector<Relation> cand_trail_;
    std::vector<int> origin_depth_;  // per engine edge: deciding depth, -1 root
    std::vector<DepthSet> node_r_;   // per depth: subtree failure reasons
    std::vector<DepthSet> fail_r_;   // per depth: scratch for FC/probe blame
    std::vector<DepthSet> elim_reason_;  // per edge: why candidates were removed
    std::vector<std::pair<std::size_t, DepthSet>> elim_trail_;
    bool aborted_ = false;
};

Deadline make_deadline(const std::optional<double>& timeout_s) {
    if (!timeout_s) {
        return std::nullopt;
    }
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*timeout_s));
}

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

Scenario make_scenario(const std::vector<EdgeRef>& edges, const std::vector<BaseRelation>& choices) {
    Scenario s;
    s.choices.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        s.choices.push_back(EdgeChoice{edges[e].i, edges[e].j, choices[e]});
    }
    return s;
}

IntervalSolution make_solution(const DiffEngine& eng, int num_vars) {
    IntervalSolution sol;
    if (num_vars == 0) {
        return sol;
    }
    const Assignment values = eng.extract_assignment(start_var(0));
    sol.intervals.reserve(static_cast<std::size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i) {
        sol.intervals.emplace_back(values[static_cast<std::size_t>(start_var(i))],
                                   values[static_cast<std::size_t>(end_var(i))]);
    }
    return sol;
}

}  // namespace

std::string_view to_string(Status s) {
    switch (s) {
        case Status::sat: return "sat";
        case Status::unsat: return "unsat";
        case Status::aborted: return "aborted";
    }
    return "unsat";
}

Solver::Solver(Qcn q, SolveOptions opts) : input_(std::move(q)), opts_(opts) {
    edges_ = input_.edges();
    labels_.reserve(edges_.size());
    for (const EdgeRef& e : edges_) {
        labels_.push_back(input_.label(e.i, e.j));
    }
}

Solver::Prepared Solver::prepare_labels(const std::vector<Relation>& base) const {
    for (const Relation& r : base) {
        if (r.empty()) {
            return {true, {}};
        }
    }
    if (!opts_.use_closure) {
        return {false, base};
    }
    const auto& table = CompositionTable::get(opts_.allow_point_intervals);
    Qcn work = input_;
    for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
        work.restrict_label(edges_[idx].i, edges_[idx].j, base[idx]);
    }
    auto closed = algebraic_closure(work, table);
    if (!closed) {
        return {true, {}};
    }
    Prepared out;
    out.labels.reserve(edges_.size());
    for (const EdgeRef& e : edges_) {
        out.labels.push_back(closed->label(e.i, e.j));
    }
    return out;
}

SolveResult Solver::solve() {
    const auto start = Clock::now();
    SolveResult res;
    const Deadline deadline = make_deadline(opts_.timeout_s);
    const Prepared prep = prepare_labels(labels_);
    if (prep.refuted) {
        res.status = Status::unsat;
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }
    SearchCore core(input_.num_variables(), edges_, prep.labels, opts_, deadline, res.stats);
    const RunStatus rs = core.run([&](const std::vector<BaseRelation>& choices, DiffEngine& eng) {
        res.scenario = make_scenario(edges_, choices);
        res.solution = make_solution(eng, input_.num_variables());
        return false;
    });
    res.status = rs == RunStatus::aborted ? Status::aborted
                : res.scenario            ? Status::sat
                                          : Status::unsat;
    if (res.status != Status::sat) {
        res.scenario.reset();
        res.solution.reset();
    }
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

EnumerateResult Solver::enumerate(std::uint64_t limit) {
    if (limit < 1) {
        throw std::invalid_argument("enumerate: limit must be at least 1");
    }
    const auto start = Clock::now();
    EnumerateResult res;
    const Deadline deadline = make_deadline(opts_.timeout_s);
    const Prepared prep = prepare_labels(labels_);
    if (prep.refuted) {
        res.status = Status::unsat;
        res.exhausted = true;
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }
    SearchCore core(input_.num_variables(), edges_, prep.labels, opts_, deadline, res.stats);
    const RunStatus rs = core.run([&](const std::vector<BaseRelation>& choices, DiffEngine& eng) {
        res.scenarios.push_back(make_scenario(edges_, choices));
        res.solutions.push_back(make_solution(eng, input_.num_variables()));
        return res.scenarios.size() < limit;
    });
    res.status = rs == RunStatus::aborted ? Status::aborted
                : res.scenarios.empty()   ? Status::unsat
                                          : Status::sat;
    res.exhausted = rs == RunStatus::found_all;
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

BackboneResult Solver::backbone() {
    const auto start = Clock::now();
    BackboneResult res;
    const Deadline deadline = make_deadline(opts_.timeout_s);

    auto inner = [&](const std::vector<Relation>& work, const std::vector<DiffAtom>& atoms,
                     std::vector<BaseRelation>& choices_out) -> Status {
        const Prepared prep = prepare_labels(work);
        if (prep.refuted) {
            return Status::unsat;
        }
        SearchCore core(input_.num_variables(), edges_, prep.labels, opts_, deadline, res.stats,
                        atoms);
        bool found = false;
        const RunStatus rs = core.run([&](const std::vector<BaseRelation>& choices, DiffEngine&) {
            if (!atoms.empty()) {
                bool differs = false;
                for (const DiffAtom& a : atoms) {
                    if (choices[static_cast<std::size_t>(a.edge)] != a.rel) {
                        differs = true;
                        break;
                    }
                }
                if (!differs) {
                    return true;  // keep searching
                }
            }
            choices_out = choices;
            found = true;
            return false;
        });
        if (rs == RunStatus::aborted) {
            return Status::aborted;
        }
        return found ? Status::sat : Status::unsat;
    };

    std::vector<BaseRelation> first;
    Status st = inner(labels_, {}, first);
    if (st != Status::sat) {
        res.status = st;
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }

    // Candidates seeded from the first solution; each round looks for a
    // solution differing on a surviving candidate and intersects.
    std::vector<char> alive(edges_.size(), 1);
    while (true) {
        std::vector<DiffAtom> atoms;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (alive[e]) {
                atoms.push_back(DiffAtom{static_cast<int>(e), first[e]});
            }
        }
        if (atoms.empty()) {
            break;
        }
        std::vector<BaseRelation> other;
        st = inner(labels_, atoms, other);
        if (st == Status::aborted) {
            res.status = Status::aborted;
            res.backbone.clear();
            res.stats.wall_ms = elapsed_ms(start);
            return res;
        }
        if (st == Status::unsat) {
            break;  // every solution agrees with the survivors
        }
        bool dropped = false;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (alive[e] && other[e] != first[e]) {
                alive[e] = 0;
                dropped = true;
            }
        }
        assert(dropped);
        (void)dropped;
    }

    res.status = Status::sat;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (alive[e]) {
            res.backbone.push_back(EdgeChoice{edges_[e].i, edges_[e].j, first[e]});
        }
    }
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

UnionResult Solver::union_labels() {
    const auto start = Clock::now();
    UnionResult res;
    const Deadline deadline = make_deadline(opts_.timeout_s);

    auto inner = [&](const std::vector<Relation>& work,
                     std::vector<BaseRelation>& choices_out) -> Status {
        const Prepared prep = prepare_labels(work);
        if (prep.refuted) {
            return Status::unsat;
        }
        SearchCore core(input_.num_variables(), edges_, prep.labels, opts_, deadline, res.stats);
        bool found = false;
        const RunStatus rs = core.run([&](const std::vector<BaseRelation>& choices, DiffEngine&) {
            choices_out = choices;
            found = true;
            return false;
        });
        if (rs == RunStatus::aborted) {
            return Status::aborted;
        }
        return found ? Status::sat : Status::unsat;
    };

    std::vector<BaseRelation> first;
    Status st = inner(labels_, first);
    if (st != Status::sat) {
        res.status = st;
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }

    std::vector<Relation> feasible(edges_.size());
    std::vector<Relation> work = labels_;  // shrinks as atoms are refuted
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        feasible[e].add(first[e]);
    }

    for (std::size_t e = 0; e < edges_.size(); ++e) {
        for (BaseRelation b : all_base_relations()) {
            if (!labels_[e].contains(b) || feasible[e].contains(b) || !work[e].contains(b)) {
                continue;
            }
            std::vector<Relation> forced = work;
            forced[e] = Relation::singleton(b);
            std::vector<BaseRelation> choices;
            st = inner(forced, choices);
            if (st == Status::aborted) {
                res.status = Status::aborted;
                res.stats.wall_ms = elapsed_ms(start);
                return res;
            }
            if (st == Status::sat) {
                for (std::size_t f = 0; f < edges_.size(); ++f) {
                    feasible[f].add(choices[f]);
                }
            } else {
                work[e].remove(b);
            }
        }
    }

    res.status = Status::sat;
    res.unions.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        res.unions.push_back(EdgeRelation{edges_[e], feasible[e]});
    }
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

}  // namespace allendl
