// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "allendl/network.hpp"
#include "allendl/solver.hpp"

namespace allendl {

/// Seedable, portable random source. The stream is fully determined by the
/// seed: std::mt19937_64 (whose algorithm the C++ standard fixes) with
/// hand-rolled mappings, because the standard distributions are
/// implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1, by rejection sampling.
    std::uint64_t next_below(std::uint64_t n);

  private:
    std::mt19937_64 gen_;
};

/// Model A: every pair is constrained with probability d/(n-1); labels take
/// each base relation with probability s/13, redrawn while empty or
/// universal.
struct GenSpecA {
    int n = 0;
    double d = 0;
    double s = 6.5;
    std::uint64_t seed = 0;
};

/// Model H: edges as in model A; labels drawn uniformly from a pool of hard
/// relations.
struct GenSpecH {
    int n = 0;
    double d = 0;
    std::uint64_t seed = 0;
    std::vector<Relation> pool;
};

Qcn generate_a(const GenSpecA& spec);
Qcn generate_h(const GenSpecH& spec);

/// Relations whose minimal CNF over the cross-endpoint order literals needs
/// a clause of three or more literals (derivation documented in
/// derive_hard_pool). Computed once per process.
const std::vector<Relation>& default_hard_pool();

/// The derivation itself; deterministic, ascending bitmask order.
std::vector<Relation> derive_hard_pool();

/// One relation per line in token syntax, `#` comments. Validates that the
/// pool is non-empty, has no empty/universal entries, and is closed under
/// converse.
std::vector<Relation> load_pool(std::istream& in);

/// Inverse of load_pool, with a provenance header when requested.
std::string serialize_pool(const std::vector<Relation>& pool, bool with_header);

struct OracleReport {
    bool sat = false;
    std::uint64_t scenario_count = 0;
    std::vector<EdgeChoice> backbone;   // only edges agreeing across all scenarios
    std::vector<EdgeRelation> unions;   // every stored edge, ascending
};

struct OracleLimits {
    int max_n = 5;
    std::uint64_t max_scenarios = 10'000'000;
    bool allow_point_intervals = false;
};

/// Exhaustive ground truth: enumerates the full Cartesian product of label
/// choices and decides each scenario with a fresh, non-incremental
/// Bellman-Ford run. Shares only the algebra templates with the solver.
/// Throws std::invalid_argument when the instance exceeds the limits.
OracleReport oracle(const Qcn& q, const OracleLimits& limits = {});

}  // namespace allendl
