#pragma once

#include <cstdint>
#include <vector>

#include "mrcs/mdp_model.hpp"

namespace mrcs {

struct SolveOptions {
    double gamma = 0.95;         // discount factor, in (0, 1)
    double epsilon = 1e-6;       // sup-norm stopping tolerance on the value
    int max_iterations = 20000;  // SolverError beyond this

    void validate() const;  // throws ConfigError
};

struct SolveResult {
    std::vector<int> policy;  // greedy action per flat state (lowest id wins ties)
    Eigen::VectorXd value;    // per flat state
    int iterations = 0;
    double residual = 0.0;
    std::uint64_t multiplies = 0;  // scalar multiplications in Bellman backups
    double seconds = 0.0;
    std::vector<double> residual_history;  // sup-norm residual per iteration
};

// Value iteration with factored backups: the expectation contracts the CR
// chain once per sweep and the per-action CF rows separately, instead of one
// dense |S| x |S| matrix per action.
SolveResult solve(const MdpModel& model, const SolveOptions& options = {});

// One factored backup: the Q column for a single action given V.
Eigen::VectorXd factored_backup(const MdpModel& model, const Eigen::VectorXd& value,
                                int action, double gamma);

// Greedy policy extraction from an externally supplied value function.
std::vector<int> greedy_policy(const MdpModel& model, const Eigen::VectorXd& value,
                               double gamma);

// Plain tabular MDP: one |S| x |S| row-stochastic matrix per action and an
// |S| x |A| reward. Used for small oracles and cross-checks against the
// factored representation.
struct DenseMdp {
    std::vector<Eigen::MatrixXd> trans;
    Eigen::MatrixXd reward;

    int num_states() const { return static_cast<int>(reward.rows()); }
    int num_actions() const { return static_cast<int>(reward.cols()); }
};

// Dense expansion of a factored model (ShapeError above 4096 states).
DenseMdp to_dense(const MdpModel& model);

// Tabular value iteration with the same stopping rule and tie-breaking as
// solve().
SolveResult solve_dense(const DenseMdp& mdp, const SolveOptions& options = {});

// Exact discounted value of a fixed deterministic policy via linear solve.
Eigen::VectorXd evaluate_policy(const DenseMdp& mdp, const std::vector<int>& policy,
                                double gamma);

}  // namespace mrcs
