#include "mrcs/state_space.hpp"

#include <bit>

#include "mrcs/errors.hpp"

namespace mrcs {

int sigma(int cr) { return std::popcount(static_cast<unsigned>(cr)); }

void StateSpace::validate() const {
    if (num_channels < 1 || num_channels > 24)
        throw ConfigError("state space: num_channels out of range");
    if (num_actions != num_base_actions() && num_actions != num_base_actions() + 2)
        throw ConfigError("state space: num_actions must cover the configurations, "
                          "optionally plus the two continue pseudo-actions");
}

CfKind StateSpace::cf_kind(int cf) const {
    if (cf == cf_sleep_dcm()) return CfKind::SleepDcm;
    if (cf == cf_sleep_dftfb()) return CfKind::SleepDftfb;
    if (cf >= 2 && cf < 2 + num_channels) return CfKind::Dcm;
    if (cf == cf_dftfb()) return CfKind::Dftfb;
    if (transition_states && cf == cf_trans_dcm()) return CfKind::TransDcm;
    if (transition_states && cf == cf_trans_dftfb()) return CfKind::TransDftfb;
    throw ConfigError("state space: CF index out of range");
}

int StateSpace::dcm_channel(int cf) const {
    if (cf_kind(cf) != CfKind::Dcm) throw ConfigError("state space: CF is not a DCM state");
    return cf - 2;
}

std::string StateSpace::cf_name(int cf) const {
    switch (cf_kind(cf)) {
        case CfKind::SleepDcm: return "sleep-dcm";
        case CfKind::SleepDftfb: return "sleep-dftfb";
        case CfKind::Dcm: return "dcm" + std::to_string(dcm_channel(cf));
        case CfKind::Dftfb: return "dftfb";
        case CfKind::TransDcm: return "trans-dcm";
        case CfKind::TransDftfb: return "trans-dftfb";
    }
    return "?";
}

std::string StateSpace::action_name(int a) const {
    if (a == act_sleep_dcm()) return "sleep-dcm";
    if (a == act_sleep_dftfb()) return "sleep-dftfb";
    if (a >= act_dcm(0) && a < act_dcm(num_channels))
        return "dcm" + std::to_string(a - act_dcm(0));
    if (a == act_dftfb()) return "dftfb";
    if (a == act_continue_dcm()) return "continue-dcm";
    if (a == act_continue_dftfb()) return "continue-dftfb";
    throw ConfigError("state space: action id out of range");
}

bool dcm_side(CfKind kind) {
    return kind == CfKind::SleepDcm || kind == CfKind::Dcm || kind == CfKind::TransDcm;
}

ActionTarget action_target(const StateSpace& sp, int a) {
    if (a == sp.act_sleep_dcm()) return {true, sp.cf_sleep_dcm()};
    if (a == sp.act_sleep_dftfb()) return {false, sp.cf_sleep_dftfb()};
    if (a >= sp.act_dcm(0) && a < sp.act_dcm(sp.num_channels))
        return {true, sp.cf_dcm(a - sp.act_dcm(0))};
    if (a == sp.act_dftfb()) return {false, sp.cf_dftfb()};
    throw ConfigError("state space: action without a configuration target");
}

}  // namespace mrcs
