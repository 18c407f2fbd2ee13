#include "mrhs/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrhs/io.hpp"
#include "mrhs/rng.hpp"

namespace mrhs {

SimulationResult run_simulation(const MrhsSystem& base, const std::vector<std::size_t>& order,
                                std::size_t trials, std::uint64_t seed, std::uint64_t rhs_cap) {
    validate_system(base);
    if (trials < 1) throw Error("run_simulation: need at least one trial");

    std::vector<std::size_t> r = rank_profile(base, order);
    double q = static_cast<double>(base.field.q());
    std::int64_t max_def = 0;
    bool first = true;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        std::int64_t d = static_cast<std::int64_t>(r[k - 1]) - static_cast<std::int64_t>(k);
        if (first || d > max_def) max_def = d, first = false;
    }
    double bound = static_cast<double>(base.m()) * std::pow(q, static_cast<double>(max_def));

    std::size_t m = base.m();
    SimulationResult res;
    res.rows.reserve(trials);
    std::vector<double> out_sum(m, 0.0);  // index k-1 for step k, k >= 2
    double cost_sum = 0.0;

    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::uint64_t trial_seed = Rng::substream(seed, trial);
        MrhsSystem sys{base.n, base.field, {}};
        sys.equations.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            const Mat& a = base.equations[j].a;
            sys.equations.push_back(
                make_equation(a, random_rhs(a, Rng::substream(trial_seed, j), rhs_cap)));
        }
        SolveResult sr = solve_system(sys, order);
        for (const GlueStep& g : sr.trace.steps) out_sum[g.step - 1] += static_cast<double>(g.out);

        std::uint64_t cost = sr.trace.total_cost();
        cost_sum += static_cast<double>(cost);
        std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t sols = sr.final.s.size();
        for (std::size_t i = sr.final.t(); i < base.n && sols; ++i)
            sols = sols > kMax / base.field.q() ? kMax : sols * base.field.q();
        res.rows.push_back(TrialRow{trial, cost, max_def, bound,
                                    bound > 0 ? static_cast<double>(cost) / bound : 0.0,
                                    sr.final.s.size(), sols});
    }

    res.mean_cost = cost_sum / static_cast<double>(trials);
    res.bound = bound;
    res.cost_ratio = bound > 0 ? res.mean_cost / bound : 0.0;
    res.max_step_ratio = 0.0;
    for (std::size_t k = 2; k <= m; ++k) {
        double mean = out_sum[k - 1] / static_cast<double>(trials);
        double pred = std::pow(q, static_cast<double>(r[k - 1]) - static_cast<double>(k));
        double ratio = pred > 0 ? mean / pred : 0.0;
        res.steps.push_back(StepStat{k, r[k - 1], mean, pred, ratio});
        res.max_step_ratio = std::max(res.max_step_ratio, ratio);
    }
    return res;
}

std::string simulation_csv(const SimulationResult& r) {
    std::string out = "trial,cost,max_rank_deficit,predicted_bound,ratio,final_s,solutions\n";
    double sum_ratio = 0, sum_final = 0, sum_sols = 0;
    for (const TrialRow& row : r.rows) {
        out += std::to_string(row.trial) + ',' + std::to_string(row.cost) + ',' +
               std::to_string(row.max_rank_deficit) + ',' + io::format_double(row.predicted_bound) +
               ',' + io::format_double(row.ratio) + ',' + std::to_string(row.final_s) + ',' +
               std::to_string(row.solutions) + '\n';
        sum_ratio += row.ratio;
        sum_final += static_cast<double>(row.final_s);
        sum_sols += static_cast<double>(row.solutions);
    }
    double n = static_cast<double>(r.rows.size());
    out += "summary," + io::format_double(r.mean_cost) + ',' +
           std::to_string(r.rows.empty() ? 0 : r.rows.front().max_rank_deficit) + ',' +
           io::format_double(r.bound) + ',' + io::format_double(sum_ratio / n) + ',' +
           io::format_double(sum_final / n) + ',' + io::format_double(sum_sols / n) + '\n';
    return out;
}

}  // namespace mrhs
