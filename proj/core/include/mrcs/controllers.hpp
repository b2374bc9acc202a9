#pragma once

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "mrcs/mdp_model.hpp"
#include "mrcs/policy_io.hpp"

namespace mrcs {

// What a controller sees at the start of each frame: the incoming request
// vector and the configuration the processing system is currently in. The
// requests never command the processing system directly; the controller does.
struct ControllerInput {
    int cr = 0;                 // request bit vector, channel 0 = LSB
    int cf = 0;                 // current configuration (CF index)
    bool in_transition = false; // cf is one of the transition states
};

class Controller {
public:
    virtual ~Controller() = default;
    virtual int step(const ControllerInput& in) = 0;
    virtual void reset() {}
    virtual std::string name() const = 0;
};

// LUT policy: a pure table lookup at the flat state index.
class MdpController : public Controller {
public:
    MdpController(PolicyTable policy, StateSpace space, std::string label = "mdp");
    int step(const ControllerInput& in) override;
    std::string name() const override { return label_; }

private:
    PolicyTable policy_;
    StateSpace space_;
    std::string label_;
};

// Keeps the filter bank on at all times.
class ManualDftfb : public Controller {
public:
    explicit ManualDftfb(StateSpace space) : space_(space) {}
    int step(const ControllerInput& in) override;
    std::string name() const override { return "manual-dftfb"; }

private:
    StateSpace space_;
};

// Filter bank when anything is requested, its sleep state otherwise.
class ManualDftfbSleep : public Controller {
public:
    explicit ManualDftfbSleep(StateSpace space) : space_(space) {}
    int step(const ControllerInput& in) override;
    std::string name() const override { return "manual-dftfb-sleep"; }

private:
    StateSpace space_;
};

// Single-channel decimator tuned to the lowest requested channel, sleeping
// when nothing is requested.
class ManualDcmSleep : public Controller {
public:
    explicit ManualDcmSleep(StateSpace space) : space_(space) {}
    int step(const ControllerInput& in) override;
    std::string name() const override { return "manual-dcm-sleep"; }

private:
    StateSpace space_;
};

// Threshold rule: below dft_thresh requested channels use the DCM, at or
// above it use the DFTFB, and with no requests sleep the current side. An
// in-flight reconfiguration is allowed to finish.
class ManualCombo : public Controller {
public:
    ManualCombo(StateSpace space, int dft_thresh);
    int step(const ControllerInput& in) override;
    void reset() override { last_action_ = -1; }
    std::string name() const override;

private:
    StateSpace space_;
    int thresh_;
    int last_action_ = -1;
};

struct MharpConfig {
    int window = 16;
    double theta_low = 0.25;
    double theta_high = 6.0;

    static MharpConfig power_optimized() { return {16, 0.25, 6.0}; }
    static MharpConfig success_optimized() { return {4, 0.1, 1.5}; }

    void validate(int num_channels) const;  // throws ConfigError
};

// Moving-average threshold controller: smooths the request count over a
// window, picks the configuration band from the thresholds, and within the
// band takes the action with the best immediate reward.
class MharpController : public Controller {
public:
    MharpController(MharpConfig cfg, MdpModel model, std::string label = "mharp");
    int step(const ControllerInput& in) override;
    void reset() override { window_.clear(); }
    std::string name() const override { return label_; }

private:
    int best_of(const std::vector<int>& actions, const ControllerInput& in) const;

    MharpConfig cfg_;
    MdpModel model_;
    std::string label_;
    std::deque<int> window_;  // recent cr vectors, newest last
};

}  // namespace mrcs
