#pragma once

#include "freespec/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace freespec {

/// Shared knobs for the verification suites.  All randomness flows from the
/// master seed; per-trial seeds are derived as hash(seed, suite, trial), so
/// parallel and serial runs produce identical reports.
struct RunConfig {
    double eps = 1e-7;
    std::uint64_t seed = 1;
    int samples = 0;                    // 0 = suite default
    std::vector<Eigen::Index> levels;   // empty = suite default
    bool parallel = false;
};

struct SuiteResult {
    bool pass = false;
    Json report;
};

const std::vector<std::string>& suite_names();

/// Run one named suite against a context.  Throws std::invalid_argument for
/// an unknown suite name.
SuiteResult run_suite(const std::string& name, const PencilContext& ctx, const RunConfig& cfg);

}  // namespace freespec
