#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mrcs/state_space.hpp"

namespace mrcs {

// Per-configuration average power draw, in watts.
struct PowerTable {
    double sleep = 5.36e-6;
    double dcm = 7.61e-3;
    double dftfb = 17.92e-3;
    double transition = 10.25e-3;

    double of(CfKind kind) const;
    double max_power() const;
    double min_power() const;
};

// Markov chain over the channel-request vector CR. From the all-idle vector
// the system stays idle with probability 1 - p_start, otherwise draws a fresh
// request vector with i.i.d. per-channel activity beta; from any active
// vector it goes idle with probability p_stop, otherwise redraws.
struct RequestModel {
    double beta = 0.25;
    double p_start = 0.2;
    double p_stop = 0.2;
};

struct MdpParams {
    StateSpace space;
    RequestModel request;
    PowerTable power;
    // Time to reconfigure between the DCM and DFTFB families, in frames.
    // Same-family changes (sleep/wake, DCM retune) complete within the frame.
    // Values below 1 complete within the frame too; otherwise the system
    // passes through a transition state with exit probability
    // 1/floor(trans_frames) per frame (when transition states are modeled).
    double trans_frames = 1.0;
    double r1 = 0.5;  // weight of the request-success reward; power gets 1 - r1

    void validate() const;  // throws ConfigError
};

// Factored transition model: p(s'|s,a) = p(cr'|cr) * p(cf'|cf1(cf), a).
// Only the base (non-continue) actions have stored CF rows; the continue
// pseudo-actions act as the identity on CF.
//
// The reward is R(s, a) = sum_cf' p(cf'|cf1(cf), a) * base(cr, cf'), i.e. the
// scalarized reward of the configuration active during the upcoming frame,
// evaluated against the current request vector.
struct MdpModel {
    MdpParams params;
    Eigen::MatrixXd cr_trans;               // num_cr x num_cr, row-stochastic
    std::vector<Eigen::MatrixXd> cf_trans;  // per base action: num_cf1 x num_cf
    Eigen::MatrixXd reward_base;            // num_cr x num_cf: r1*g1 + (1-r1)*g2

    // Expanded CF row for any (cf, action), including continue actions.
    Eigen::RowVectorXd cf_row(int cf, int action) const;

    double success_reward(int cr, int cf) const;  // g1 for the active config
    double power_reward(int cf) const;            // g2 for the active config
    double reward(int state, int action) const;   // R(s, a)

    // Stored transition-matrix elements under the factored representation.
    std::uint64_t element_count() const;
    // Elements a dense |S|^2 x |base actions| representation would need.
    std::uint64_t dense_element_count() const;
};

MdpModel build_model(const MdpParams& params);

// Dense |S| x |S| expansion of one action's transition matrix; intended for
// oracle tests, so it refuses state spaces above 4096 states (ShapeError).
Eigen::MatrixXd dense_stm(const MdpModel& model, int action);

}  // namespace mrcs
