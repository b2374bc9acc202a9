#include "mrcs/controllers.hpp"

#include <algorithm>
#include <bit>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

int lowest_requested(int cr) {
    return std::countr_zero(static_cast<unsigned>(cr));
}

bool dcm_side_cf(const StateSpace& sp, int cf) { return dcm_side(sp.cf_kind(cf)); }

}  // namespace

MdpController::MdpController(PolicyTable policy, StateSpace space, std::string label)
    : policy_(std::move(policy)), space_(space), label_(std::move(label)) {
    if (static_cast<int>(policy_.actions.size()) != space_.num_states())
        throw ShapeError("controller: policy length does not match the state space");
}

int MdpController::step(const ControllerInput& in) {
    int cf = in.cf;
    if (cf < 0 || in.cr < 0 || in.cr >= space_.num_cr())
        throw EncodingError("controller: state outside the policy's state space");
    if (cf >= space_.num_cf()) {
        // A transition-unaware policy has no entry for a transition state; ask
        // it as if the machine were parked in that side's sleep state. The
        // simulator ignores cross-family commands mid-transition anyway.
        if (!space_.transition_states && in.in_transition)
            cf = dcm_side_cf(StateSpace{space_.num_channels, true, space_.num_actions}, cf)
                     ? space_.cf_sleep_dcm()
                     : space_.cf_sleep_dftfb();
        else
            throw EncodingError("controller: state outside the policy's state space");
    }
    return policy_.actions[space_.flat(in.cr, cf)];
}

int ManualDftfb::step(const ControllerInput&) { return space_.act_dftfb(); }

int ManualDftfbSleep::step(const ControllerInput& in) {
    return sigma(in.cr) == 0 ? space_.act_sleep_dftfb() : space_.act_dftfb();
}

int ManualDcmSleep::step(const ControllerInput& in) {
    return sigma(in.cr) == 0 ? space_.act_sleep_dcm()
                             : space_.act_dcm(lowest_requested(in.cr));
}

ManualCombo::ManualCombo(StateSpace space, int dft_thresh)
    : space_(space), thresh_(dft_thresh) {
    if (dft_thresh < 2 || dft_thresh > 6)
        throw ConfigError("controller: combo threshold must lie in 2..6");
}

std::string ManualCombo::name() const {
    return "manual-combo-" + std::to_string(thresh_);
}

int ManualCombo::step(const ControllerInput& in) {
    if (in.in_transition && last_action_ >= 0) return last_action_;
    const int s = sigma(in.cr);
    int a;
    if (s == 0)
        a = dcm_side_cf(space_, in.cf) ? space_.act_sleep_dcm()
                                       : space_.act_sleep_dftfb();
    else if (s < thresh_)
        a = space_.act_dcm(lowest_requested(in.cr));
    else
        a = space_.act_dftfb();
    last_action_ = a;
    return a;
}

void MharpConfig::validate(int num_channels) const {
    if (window < 1) throw ConfigError("mharp: window must be positive");
    if (!(0.0 <= theta_low && theta_low < theta_high && theta_high <= num_channels))
        throw ConfigError("mharp: thresholds must satisfy 0 <= low < high <= N_C");
}

MharpController::MharpController(MharpConfig cfg, MdpModel model, std::string label)
    : cfg_(cfg), model_(std::move(model)), label_(std::move(label)) {
    cfg_.validate(model_.params.space.num_channels);
}

int MharpController::best_of(const std::vector<int>& actions,
                             const ControllerInput& in) const {
    const StateSpace& sp = model_.params.space;
    const int state = sp.flat(in.cr, std::min(in.cf, sp.num_cf() - 1));
    int best = actions.front();
    double best_r = model_.reward(state, best);
    for (size_t i = 1; i < actions.size(); ++i) {
        const double r = model_.reward(state, actions[i]);
        if (r > best_r) {
            best_r = r;
            best = actions[i];
        }
    }
    return best;
}

int MharpController::step(const ControllerInput& in) {
    const StateSpace& sp = model_.params.space;
    window_.push_back(in.cr);
    while (static_cast<int>(window_.size()) > cfg_.window) window_.pop_front();
    double avg = 0.0;
    for (int cr : window_) avg += sigma(cr);
    avg /= cfg_.window;  // zero-padded startup: missing history counts as idle

    if (avg >= cfg_.theta_high) return sp.act_dftfb();
    if (avg < cfg_.theta_low)
        return best_of({sp.act_sleep_dcm(), sp.act_sleep_dftfb()}, in);

    // DCM band: tune to the most frequently requested channel in the window,
    // ties to the lowest index.
    std::vector<int> counts(sp.num_channels, 0);
    for (int cr : window_)
        for (int ch = 0; ch < sp.num_channels; ++ch)
            if ((cr >> ch) & 1) ++counts[ch];
    const int mode = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    return sp.act_dcm(mode);
}

}  // namespace mrcs
