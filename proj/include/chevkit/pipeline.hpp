#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chevkit/ring.hpp"
#include "chevkit/rootsys.hpp"

namespace chevkit {

// Relation sweeps over seeded random samples.
//   additivity   x_a(t) x_a(s) = x_a(t + s)
//   commutator   [x_a(t), x_b(s)] = x_{a+b}(N_ab t s) for summable a, b
//   torus        h_a(u) x_b(t) h_a(u)^{-1} = x_b(u^<b,a> t)
//   commutator1  [x_a(t), x_b(1)] = x_{a+b}(+-t)
//   qorder       Q_a^3 = 1 for every root
//   wij          w_ij^2 = 1 and w_ij Q_i w_ij = Q_j along the orthogonal sequence
// "steinberg" runs the first four.
struct RelationResult {
    std::string relation;
    size_t checked = 0, failed = 0;
    std::string first_failure;
};

std::vector<std::string> relation_names();
std::vector<RelationResult> run_relations(const RootSystem& sys, const Ring& r, const std::string& set, uint64_t seed,
                                          size_t samples);

struct StageResult {
    std::string name;
    std::string status;  // pass, fail, skipped
    json details;
};

struct PipelineReport {
    std::vector<StageResult> stages;
    bool ok() const;
    json to_json() const;
    std::string text() const;
};

struct PipelineOptions {
    uint64_t seed = 7;
    size_t samples = 200;
    std::vector<std::string> only;  // empty = all stages
};

std::vector<std::string> pipeline_stage_names();
PipelineReport run_pipeline(const PipelineOptions& opt);

}  // namespace chevkit
