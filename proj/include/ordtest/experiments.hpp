#ifndef ORDTEST_EXPERIMENTS_HPP
#define ORDTEST_EXPERIMENTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "ordtest/io.hpp"
#include "ordtest/structures.hpp"

namespace ordtest {

struct AssertionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentResult {
    std::string name;
    CsvReport csv;
    std::vector<AssertionResult> assertions;

    bool all_pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }
};

std::vector<std::string> list_experiments();
bool is_experiment(const std::string& name);

// Runs a named suite. Throws parameter_error for unknown names or bad
// configs; capacity errors inside a row are reported per-row, not fatal.
ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg);

// Structure generator behind `ordtest generate`: distribution is "uniform",
// "property:<name>" or "planted:<pattern>" (chessboard, disk, ring,
// halfplane, rect). Deterministic given the seed.
OrderedStructure generate(const std::string& kind, int n, const std::string& distribution,
                          std::uint64_t seed);

// Index-parallel loop; worker count from ORDTEST_THREADS (default: hardware).
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);
int thread_budget();

} // namespace ordtest

#endif
