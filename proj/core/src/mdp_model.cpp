#include "mrcs/mdp_model.hpp"

#include <algorithm>
#include <cmath>

#include "mrcs/errors.hpp"

namespace mrcs {

double PowerTable::of(CfKind kind) const {
    switch (kind) {
        case CfKind::SleepDcm:
        case CfKind::SleepDftfb: return sleep;
        case CfKind::Dcm: return dcm;
        case CfKind::Dftfb: return dftfb;
        case CfKind::TransDcm:
        case CfKind::TransDftfb: return transition;
    }
    return 0.0;
}

double PowerTable::max_power() const {
    return std::max({sleep, dcm, dftfb, transition});
}

double PowerTable::min_power() const {
    return std::min({sleep, dcm, dftfb, transition});
}

void MdpParams::validate() const {
    space.validate();
    if (!(request.beta > 0.0 && request.beta < 1.0))
        throw ConfigError("model: beta must lie in (0, 1)");
    if (!(request.p_start >= 0.0 && request.p_start <= 1.0))
        throw ConfigError("model: p_start must lie in [0, 1]");
    if (!(request.p_stop >= 0.0 && request.p_stop <= 1.0))
        throw ConfigError("model: p_stop must lie in [0, 1]");
    if (!(trans_frames >= 0.0))
        throw ConfigError("model: trans_frames must be nonnegative");
    if (!(r1 >= 0.0 && r1 <= 1.0)) throw ConfigError("model: r1 must lie in [0, 1]");
    if (power.max_power() <= power.min_power())
        throw ConfigError("model: power table must span a nonzero range");
}

double MdpModel::success_reward(int cr, int cf) const {
    const StateSpace& sp = params.space;
    int served = 0;
    switch (sp.cf_kind(cf)) {
        case CfKind::Dftfb: served = sigma(cr); break;
        case CfKind::Dcm: served = (cr >> sp.dcm_channel(cf)) & 1; break;
        default: served = 0; break;
    }
    return static_cast<double>(served) / sp.num_channels;
}

double MdpModel::power_reward(int cf) const {
    const double p = params.power.of(params.space.cf_kind(cf));
    return (params.power.max_power() - p) /
           (params.power.max_power() - params.power.min_power());
}

Eigen::RowVectorXd MdpModel::cf_row(int cf, int action) const {
    const StateSpace& sp = params.space;
    if (sp.is_continue_action(action)) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(sp.num_cf());
        row(cf) = 1.0;
        return row;
    }
    return cf_trans[action].row(sp.cf1_of(cf));
}

double MdpModel::reward(int state, int action) const {
    const StateSpace& sp = params.space;
    return cf_row(sp.cf_of(state), action).dot(reward_base.row(sp.cr_of(state)));
}

std::uint64_t MdpModel::element_count() const {
    const StateSpace& sp = params.space;
    const std::uint64_t cr = static_cast<std::uint64_t>(sp.num_cr());
    return cr * cr + static_cast<std::uint64_t>(sp.num_cf1()) * sp.num_cf() *
                         sp.num_base_actions();
}

std::uint64_t MdpModel::dense_element_count() const {
    const StateSpace& sp = params.space;
    const std::uint64_t n = static_cast<std::uint64_t>(sp.num_states());
    return n * n * sp.num_base_actions();
}

MdpModel build_model(const MdpParams& params) {
    params.validate();
    const StateSpace& sp = params.space;
    MdpModel m;
    m.params = params;

    // Request chain. Row i0 (all idle) mixes a fresh draw with staying idle;
    // every other row mixes going idle with a fresh draw.
    const int ncr = sp.num_cr();
    const int nc = sp.num_channels;
    const double beta = params.request.beta;
    Eigen::VectorXd pd(ncr);
    for (int j = 0; j < ncr; ++j)
        pd(j) = std::pow(beta, sigma(j)) * std::pow(1.0 - beta, nc - sigma(j));
    m.cr_trans.resize(ncr, ncr);
    for (int i = 0; i < ncr; ++i) {
        if (i == 0) {
            for (int j = 0; j < ncr; ++j)
                m.cr_trans(i, j) = params.request.p_start * pd(j) +
                                   (j == 0 ? 1.0 - params.request.p_start : 0.0);
        } else {
            for (int j = 0; j < ncr; ++j)
                m.cr_trans(i, j) = (1.0 - params.request.p_stop) * pd(j) +
                                   (j == 0 ? params.request.p_stop : 0.0);
        }
    }

    // Configuration rows per base action, indexed by CF1. Same-family
    // requests (including sleep/wake and DCM retunes) complete within the
    // frame. Cross-family requests either pass through the matching
    // transition state or, when transitions are not modeled or faster than a
    // frame, complete immediately. While a transition is in flight, only
    // actions toward its family continue (and eventually finish) it; other
    // actions are ignored.
    const int dwell = static_cast<int>(std::floor(params.trans_frames));
    const bool through_trans = sp.transition_states && dwell >= 1;
    const double c = through_trans ? 1.0 / dwell : 1.0;
    m.cf_trans.resize(sp.num_base_actions());
    for (int a = 0; a < sp.num_base_actions(); ++a) {
        const ActionTarget tgt = action_target(sp, a);
        Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(sp.num_cf1(), sp.num_cf());
        for (int cf1 = 0; cf1 < sp.num_cf1(); ++cf1) {
            const CfKind kind = static_cast<CfKind>(cf1);
            const bool same_family = dcm_side(kind) == tgt.dcm_family;
            const bool in_transition =
                kind == CfKind::TransDcm || kind == CfKind::TransDftfb;
            const int trans_cf =
                tgt.dcm_family ? sp.cf_trans_dcm() : sp.cf_trans_dftfb();
            if (in_transition && same_family) {
                // Finish with probability c; the sub-frame retune on arrival
                // then reaches the requested target.
                rows(cf1, trans_cf) += 1.0 - c;
                rows(cf1, tgt.target_cf) += c;
            } else if (in_transition) {
                // Ignored: the in-flight transition is allowed to finish.
                const int self = kind == CfKind::TransDcm ? sp.cf_trans_dcm()
                                                          : sp.cf_trans_dftfb();
                rows(cf1, self) = 1.0;
            } else if (same_family || !through_trans) {
                rows(cf1, tgt.target_cf) = 1.0;
            } else {
                rows(cf1, trans_cf) = 1.0;
            }
        }
        m.cf_trans[a] = std::move(rows);
    }

    m.reward_base.resize(ncr, sp.num_cf());
    for (int cr = 0; cr < ncr; ++cr)
        for (int cf = 0; cf < sp.num_cf(); ++cf)
            m.reward_base(cr, cf) = params.r1 * m.success_reward(cr, cf) +
                                    (1.0 - params.r1) * m.power_reward(cf);
    return m;
}

Eigen::MatrixXd dense_stm(const MdpModel& model, int action) {
    const StateSpace& sp = model.params.space;
    if (sp.num_states() > 4096)
        throw ShapeError("dense_stm: state space too large for dense expansion");
    if (action < 0 || action >= sp.num_actions)
        throw ConfigError("dense_stm: action id out of range");
    const int n = sp.num_states();
    Eigen::MatrixXd p(n, n);
    for (int cr = 0; cr < sp.num_cr(); ++cr)
        for (int cf = 0; cf < sp.num_cf(); ++cf) {
            const Eigen::RowVectorXd row = model.cf_row(cf, action);
            for (int cr2 = 0; cr2 < sp.num_cr(); ++cr2)
                for (int cf2 = 0; cf2 < sp.num_cf(); ++cf2)
                    p(sp.flat(cr, cf), sp.flat(cr2, cf2)) =
                        model.cr_trans(cr, cr2) * row(cf2);
        }
    return p;
}

}  // namespace mrcs
