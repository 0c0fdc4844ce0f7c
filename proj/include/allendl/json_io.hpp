// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "allendl/instances.hpp"
#include "allendl/network.hpp"
#include "allendl/solver.hpp"

namespace allendl {

using Json = nlohmann::json;

// Network schema: {"n": int, "edges": [{"i": int, "j": int, "rels": [tok]}]}
Json qcn_to_json(const Qcn& q);
Qcn qcn_from_json(const Json& j);

// Result schemas share the field names below:
//   status   "sat" | "unsat" | "aborted"
//   scenario list of {i, j, rel}
//   solution list of {var, start, end}
//   backbone list of {i, j, rel}
//   union    list of {i, j, rels: [tok]}
//   stats    {decisions, conflicts, propagations, wall_ms}
Json to_json(const SolveStats& stats);
Json to_json(const Scenario& scenario);
Json to_json(const IntervalSolution& solution);
Json to_json(const SolveResult& result);
Json to_json(const BackboneResult& result);
Json to_json(const UnionResult& result);
Json to_json(const EnumerateResult& result);
Json to_json(const OracleReport& report);

}  // namespace allendl
