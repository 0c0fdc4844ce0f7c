// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "allendl/instances.hpp"
#include "allendl/json_io.hpp"
#include "allendl/network.hpp"
#include "allendl/solver.hpp"

namespace py = pybind11;
using namespace allendl;

namespace {

Relation relation_from_tokens(const std::vector<std::string>& tokens) {
    Relation rel;
    for (const std::string& tok : tokens) {
        const auto b = base_relation_from_token(tok);
        if (!b) {
            throw py::value_error("unknown relation token '" + tok + "'");
        }
        rel.add(*b);
    }
    return rel;
}

std::vector<std::string> relation_tokens(Relation rel) {
    std::vector<std::string> out;
    for (BaseRelation b : rel.members()) {
        out.emplace_back(token(b));
    }
    return out;
}

SolveOptions make_options(bool closure, bool forward_check, bool allow_point_intervals,
                          bool backjump, const std::string& order,
                          std::optional<double> timeout_s) {
    SolveOptions opts;
    opts.use_closure = closure;
    opts.forward_check = forward_check;
    opts.allow_point_intervals = allow_point_intervals;
    opts.backjump = backjump;
    if (order == "wdeg") {
        opts.order = DecisionOrder::weighted_degree;
    } else if (order == "fail-first") {
        opts.order = DecisionOrder::fail_first;
    } else {
        throw py::value_error("order must be 'fail-first' or 'wdeg'");
    }
    opts.timeout_s = timeout_s;
    return opts;
}

// Results cross the boundary as plain dicts in the JSON schema.
py::object json_to_py(const Json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "qualitative temporal reasoner for Allen's interval algebra";

    py::class_<Qcn>(m, "Qcn")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &Qcn::num_variables)
        .def("label",
             [](const Qcn& q, int i, int j) { return relation_tokens(q.label(i, j)); })
        .def("restrict_label",
             [](Qcn& q, int i, int j, const std::vector<std::string>& tokens) {
                 q.restrict_label(i, j, relation_from_tokens(tokens));
             })
        .def("edges",
             [](const Qcn& q) {
                 std::vector<std::tuple<int, int, std::vector<std::string>>> out;
                 for (const EdgeRef& e : q.edges()) {
                     out.emplace_back(e.i, e.j, relation_tokens(q.label(e.i, e.j)));
                 }
                 return out;
             })
        .def("__eq__", [](const Qcn& a, const Qcn& b) { return a == b; })
        .def("__repr__", [](const Qcn& q) {
            return "Qcn(n=" + std::to_string(q.num_variables()) + ", edges=" +
                   std::to_string(q.edges().size()) + ")";
        });

    m.def("parse", [](const std::string& text) { return parse_qcn(text); },
          "Parse an instance in the text format.");
    m.def("serialize", &serialize_qcn, "Serialize an instance to the text format.");

    m.def("converse", [](const std::vector<std::string>& tokens) {
        return relation_tokens(converse(relation_from_tokens(tokens)));
    });
    m.def(
        "compose",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b,
           bool allow_point_intervals) {
            const auto& table = CompositionTable::get(allow_point_intervals);
            return relation_tokens(
                table.compose(relation_from_tokens(a), relation_from_tokens(b)));
        },
        py::arg("a"), py::arg("b"), py::arg("allow_point_intervals") = false,
        "Weak composition of two relations given as token lists.");

    m.def(
        "closure",
        [](const Qcn& q, bool allow_point_intervals) -> std::optional<Qcn> {
            return algebraic_closure(q, CompositionTable::get(allow_point_intervals));
        },
        py::arg("q"), py::arg("allow_point_intervals") = false,
        "Path-consistency refinement; None when the network is refuted.");

#define ALLENDL_OPTS_ARGS                                                             \
    py::arg("q"), py::kw_only(), py::arg("closure") = true,                          \
        py::arg("forward_check") = true, py::arg("allow_point_intervals") = false,   \
        py::arg("backjump") = false, py::arg("order") = "fail-first",                \
        py::arg("timeout_s") = py::none()

    m.def(
        "solve",
        [](const Qcn& q, bool closure, bool forward_check, bool allow_point_intervals,
           bool backjump, const std::string& order, std::optional<double> timeout_s) {
            Solver solver(q, make_options(closure, forward_check, allow_point_intervals,
                                          backjump, order, timeout_s));
            return json_to_py(to_json(solver.solve()));
        },
        ALLENDL_OPTS_ARGS, "Satisfiability with a scenario and an integer witness.");

    m.def(
        "backbone",
        [](const Qcn& q, bool closure, bool forward_check, bool allow_point_intervals,
           bool backjump, const std::string& order, std::optional<double> timeout_s) {
            Solver solver(q, make_options(closure, forward_check, allow_point_intervals,
                                          backjump, order, timeout_s));
            return json_to_py(to_json(solver.backbone()));
        },
        ALLENDL_OPTS_ARGS, "Intersection of solutions.");

    m.def(
        "union_labels",
        [](const Qcn& q, bool closure, bool forward_check, bool allow_point_intervals,
           bool backjump, const std::string& order, std::optional<double> timeout_s) {
            Solver solver(q, make_options(closure, forward_check, allow_point_intervals,
                                          backjump, order, timeout_s));
            return json_to_py(to_json(solver.union_labels()));
        },
        ALLENDL_OPTS_ARGS, "Union of solutions (minimal labeling).");

    m.def(
        "enumerate_scenarios",
        [](const Qcn& q, std::uint64_t limit, bool closure, bool forward_check,
           bool allow_point_intervals, bool backjump, const std::string& order,
           std::optional<double> timeout_s) {
            Solver solver(q, make_options(closure, forward_check, allow_point_intervals,
                                          backjump, order, timeout_s));
            return json_to_py(to_json(solver.enumerate(limit)));
        },
        py::arg("q"), py::arg("limit") = 10, py::kw_only(), py::arg("closure") = true,
        py::arg("forward_check") = true, py::arg("allow_point_intervals") = false,
        py::arg("backjump") = false, py::arg("order") = "fail-first",
        py::arg("timeout_s") = py::none(), "Distinct consistent scenarios, up to limit.");

#undef ALLENDL_OPTS_ARGS

    m.def(
        "generate_a",
        [](int n, double d, double s, std::uint64_t seed) {
            return generate_a(GenSpecA{n, d, s, seed});
        },
        py::arg("n"), py::arg("d"), py::arg("s") = 6.5, py::arg("seed") = 1);
    m.def(
        "generate_h",
        [](int n, double d, std::uint64_t seed,
           std::optional<std::vector<std::vector<std::string>>> pool) {
            GenSpecH spec{n, d, seed, {}};
            if (pool) {
                for (const auto& tokens : *pool) {
                    spec.pool.push_back(relation_from_tokens(tokens));
                }
            } else {
                spec.pool = default_hard_pool();
            }
            return generate_h(spec);
        },
        py::arg("n"), py::arg("d"), py::arg("seed") = 1, py::arg("pool") = py::none());
    m.def("default_hard_pool", [] {
        std::vector<std::vector<std::string>> out;
        for (const Relation& r : default_hard_pool()) {
            out.push_back(relation_tokens(r));
        }
        return out;
    });

    m.def(
        "oracle",
        [](const Qcn& q, int max_n, std::uint64_t max_scenarios, bool allow_point_intervals) {
            OracleLimits limits;
            limits.max_n = max_n;
            limits.max_scenarios = max_scenarios;
            limits.allow_point_intervals = allow_point_intervals;
            return json_to_py(to_json(oracle(q, limits)));
        },
        py::arg("q"), py::arg("max_n") = 5, py::arg("max_scenarios") = 10'000'000,
        py::arg("allow_point_intervals") = false,
        "Exhaustive ground truth for desk-scale instances.");

    py::class_<DiffEngine>(m, "DiffEngine")
        .def(py::init<int>(), py::arg("num_vars"))
        .def_property_readonly("num_vars", &DiffEngine::num_vars)
        .def("assert_constraint",
             [](DiffEngine& eng, int x, int y, std::int64_t k)
                 -> std::optional<std::vector<std::tuple<int, int, std::int64_t>>> {
                 const auto conflict = eng.assert_constraint(x, y, k);
                 if (!conflict) {
                     return std::nullopt;
                 }
                 std::vector<std::tuple<int, int, std::int64_t>> cycle;
                 for (const auto& c : conflict->cycle) {
                     cycle.emplace_back(c.x, c.y, c.k);
                 }
                 return cycle;
             },
             py::arg("x"), py::arg("y"), py::arg("k"),
             "Assert x - y <= k; returns the negative cycle on conflict, else None.")
        .def("push", [](DiffEngine& eng) {
            const Mark m = eng.push();
            return std::make_pair(m.level, m.edges);
        })
        .def("pop",
             [](DiffEngine& eng, std::pair<std::size_t, std::size_t> mark) {
                 eng.pop(Mark{mark.first, mark.second});
             })
        .def("extract_assignment", &DiffEngine::extract_assignment, py::arg("reference") = 0)
        .def("active_count", &DiffEngine::active_count)
        .def("dump", [](const DiffEngine& eng) {
            std::ostringstream os;
            eng.dump(os);
            return os.str();
        });

    m.attr("__version__") = "0.1.0";
}
