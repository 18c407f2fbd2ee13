#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrhs/equation.hpp"

namespace mrhs {

struct TrialRow {
    std::uint64_t trial;
    std::uint64_t cost;             // total gluing cost of this trial
    std::int64_t max_rank_deficit;  // max_k (r_k - k), fixed by the matrices
    double predicted_bound;         // m * q^max_rank_deficit
    double ratio;                   // cost / predicted_bound
    std::uint64_t final_s;
    std::uint64_t solutions;  // |final_s| * q^(n - t_final)
};

struct StepStat {
    std::size_t k;       // prefix length after the glue, 2..m
    std::size_t r_k;     // rank of the first k matrices
    double mean_out;     // mean RHS count after this glue
    double predicted;    // q^(r_k - k)
    double ratio;        // mean_out / predicted
};

struct SimulationResult {
    std::vector<TrialRow> rows;
    std::vector<StepStat> steps;
    double mean_cost;
    double bound;           // m * max_k q^(r_k - k)
    double cost_ratio;      // mean_cost / bound
    double max_step_ratio;  // worst |ratio| deviation among steps (max of ratio)
};

// Keeps the matrices of `base` fixed and redraws every RHS set per trial
// from the 1/q inclusion model. Trial i uses substream(seed, i); equation j
// inside a trial uses substream(substream(seed, i), j), so results do not
// depend on scheduling.
SimulationResult run_simulation(const MrhsSystem& base, const std::vector<std::size_t>& order,
                                std::size_t trials, std::uint64_t seed,
                                std::uint64_t rhs_cap = kDefaultEnumCap);

// CSV with the fixed column set
//   trial,cost,max_rank_deficit,predicted_bound,ratio,final_s,solutions
// one row per trial plus a trailing summary row whose numeric columns hold
// the means (bound columns repeat the constants).
std::string simulation_csv(const SimulationResult& r);

}  // namespace mrhs
