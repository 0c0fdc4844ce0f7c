// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/json_io.hpp"

namespace allendl {

Json qcn_to_json(const Qcn& q) {
    Json edges = Json::array();
    for (const EdgeRef& e : q.edges()) {
        Json rels = Json::array();
        for (BaseRelation b : q.label(e.i, e.j).members()) {
            rels.push_back(std::string(token(b)));
        }
        edges.push_back({{"i", e.i}, {"j", e.j}, {"rels", std::move(rels)}});
    }
    return Json{{"n", q.num_variables()}, {"edges", std::move(edges)}};
}

Qcn qcn_from_json(const Json& j) {
    Qcn q(j.at("n").get<int>());
    for (const Json& edge : j.at("edges")) {
        Relation rel;
        for (const Json& tok : edge.at("rels")) {
            const auto b = base_relation_from_token(tok.get<std::string>());
            if (!b) {
                throw std::invalid_argument("unknown relation token '" +
                                            tok.get<std::string>() + "'");
            }
            rel.add(*b);
        }
        q.restrict_label(edge.at("i").get<int>(), edge.at("j").get<int>(), rel);
    }
    return q;
}

Json to_json(const SolveStats& stats) {
    return Json{{"decisions", stats.decisions},
                {"conflicts", stats.conflicts},
                {"propagations", stats.propagations},
                {"wall_ms", stats.wall_ms}};
}

Json to_json(const Scenario& scenario) {
    Json out = Json::array();
    for (const EdgeChoice& c : scenario.choices) {
        out.push_back({{"i", c.i}, {"j", c.j}, {"rel", std::string(token(c.rel))}});
    }
    return out;
}

Json to_json(const IntervalSolution& solution) {
    Json out = Json::array();
    for (std::size_t v = 0; v < solution.intervals.size(); ++v) {
        out.push_back({{"var", v},
                       {"start", solution.intervals[v].first},
                       {"end", solution.intervals[v].second}});
    }
    return out;
}

namespace {

Json union_entries(const std::vector<EdgeRelation>& unions) {
    Json out = Json::array();
    for (const EdgeRelation& u : unions) {
        Json rels = Json::array();
        for (BaseRelation b : u.rels.members()) {
            rels.push_back(std::string(token(b)));
        }
        out.push_back({{"i", u.edge.i}, {"j", u.edge.j}, {"rels", std::move(rels)}});
    }
    return out;
}

Json choice_entries(const std::vector<EdgeChoice>& choices) {
    Json out = Json::array();
    for (const EdgeChoice& c : choices) {
        out.push_back({{"i", c.i}, {"j", c.j}, {"rel", std::string(token(c.rel))}});
    }
    return out;
}

}  // namespace

Json to_json(const SolveResult& result) {
    Json out{{"status", std::string(to_string(result.status))},
             {"stats", to_json(result.stats)}};
    if (result.scenario) {
        out["scenario"] = to_json(*result.scenario);
    }
    if (result.solution) {
        out["solution"] = to_json(*result.solution);
    }
    return out;
}

Json to_json(const BackboneResult& result) {
    Json out{{"status", std::string(to_string(result.status))},
             {"stats", to_json(result.stats)}};
    if (result.status == Status::sat) {
        out["backbone"] = choice_entries(result.backbone);
    }
    return out;
}

Json to_json(const UnionResult& result) {
    Json out{{"status", std::string(to_string(result.status))},
             {"stats", to_json(result.stats)}};
    if (result.status == Status::sat) {
        out["union"] = union_entries(result.unions);
    }
    return out;
}

Json to_json(const EnumerateResult& result) {
    Json scenarios = Json::array();
    for (const Scenario& s : result.scenarios) {
        scenarios.push_back(to_json(s));
    }
    Json solutions = Json::array();
    for (const IntervalSolution& s : result.solutions) {
        solutions.push_back(to_json(s));
    }
    return Json{{"status", std::string(to_string(result.status))},
                {"count", result.scenarios.size()},
                {"exhausted", result.exhausted},
                {"scenarios", std::move(scenarios)},
                {"solutions", std::move(solutions)},
                {"stats", to_json(result.stats)}};
}

Json to_json(const OracleReport& report) {
    return Json{{"sat", report.sat},
                {"scenario_count", report.scenario_count},
                {"backbone", choice_entries(report.backbone)},
                {"union", union_entries(report.unions)}};
}

}  // namespace allendl
