#pragma once

#include <string>

namespace mrcs {

// Top-level kind of a processing-system configuration (CF) state.
enum class CfKind { SleepDcm, SleepDftfb, Dcm, Dftfb, TransDcm, TransDftfb };

// Action ids (for the default 8-channel layout: 0..10 request a
// configuration, and in 13-action mode two extra "continue" pseudo-actions
// keep the current configuration and never initiate a reconfiguration).
enum Action : int {
    kActSleepDcm = 0,
    kActSleepDftfb = 1,
    kActDcm0 = 2,  // kActDcm0 + ch selects Dcm(ch)
    kActDftfb = 10,
    kActContinueDcm = 11,
    kActContinueDftfb = 12,
};

constexpr int kBaseActions = 11;  // for num_channels == 8

// Joint state layout: s = (CR, CF) with CR an N_C-bit request vector
// (channel 0 = LSB) and CF the processing configuration. Flat index is
// cr * num_cf() + cf.
struct StateSpace {
    int num_channels = 8;
    bool transition_states = true;
    int num_actions = 11;  // 11 or 13

    int num_cr() const { return 1 << num_channels; }
    int num_cf() const { return num_channels + (transition_states ? 5 : 3); }
    int num_states() const { return num_cr() * num_cf(); }

    // CF index layout: sleeps first, then the DCM bank, DFTFB, and (when
    // modeled) the two transition states.
    int cf_sleep_dcm() const { return 0; }
    int cf_sleep_dftfb() const { return 1; }
    int cf_dcm(int ch) const { return 2 + ch; }
    int cf_dftfb() const { return 2 + num_channels; }
    int cf_trans_dcm() const { return 3 + num_channels; }
    int cf_trans_dftfb() const { return 4 + num_channels; }

    CfKind cf_kind(int cf) const;
    int dcm_channel(int cf) const;  // valid only when cf_kind(cf) == CfKind::Dcm

    // CF1 is the top-level configuration: the DCM bank collapses to a single
    // value because the next configuration never depends on which channel the
    // DCM is tuned to. CF1 indices follow CfKind order.
    int num_cf1() const { return transition_states ? 6 : 4; }
    int cf1_of(int cf) const { return static_cast<int>(cf_kind(cf)); }

    int flat(int cr, int cf) const { return cr * num_cf() + cf; }
    int cr_of(int s) const { return s / num_cf(); }
    int cf_of(int s) const { return s % num_cf(); }

    // Action layout mirrors the CF layout: sleeps, DCM bank, DFTFB, then the
    // optional continue pseudo-actions.
    int num_base_actions() const { return num_channels + 3; }
    int act_sleep_dcm() const { return 0; }
    int act_sleep_dftfb() const { return 1; }
    int act_dcm(int ch) const { return 2 + ch; }
    int act_dftfb() const { return 2 + num_channels; }
    int act_continue_dcm() const { return num_base_actions(); }
    int act_continue_dftfb() const { return num_base_actions() + 1; }
    bool is_continue_action(int a) const { return a >= num_base_actions(); }

    void validate() const;  // throws ConfigError

    std::string cf_name(int cf) const;
    std::string action_name(int a) const;
};

// Number of requested channels in a CR bit vector.
int sigma(int cr);

// True for the DCM side of the machine (sleeping, running, or loading it).
bool dcm_side(CfKind kind);

// Configuration a base action drives toward, and which side it lives on.
struct ActionTarget {
    bool dcm_family;
    int target_cf;
};
ActionTarget action_target(const StateSpace& sp, int action);  // ConfigError


}  // namespace mrcs
