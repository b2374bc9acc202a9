#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mrcs/controllers.hpp"
#include "mrcs/scenario.hpp"

namespace mrcs {

// Request trace generators. Both are reproducible per seed.
std::vector<int> gen_iid_requests(const RequestModel& params, int num_channels,
                                  int n_frames, std::uint64_t seed);
std::vector<int> gen_seq_requests(const SeqParams& params, int num_channels,
                                  int n_frames, std::uint64_t seed);
std::vector<int> gen_requests(const ScenarioConfig& cfg);

struct TraceRow {
    int frame = 0;
    int cr = 0;
    int cf = 0;  // configuration active during the frame
    int action = 0;
    int served = 0;
    int requested = 0;
    double power_w = 0.0;
};

struct SimMetrics {
    double success_rate = 1.0;  // served / requested (1 when nothing requested)
    double avg_power = 0.0;
    double normalized_power_savings = 0.0;
    std::int64_t served = 0;
    std::int64_t requested = 0;
    std::int64_t frames = 0;
    double fidelity_energy = 0.0;  // total DSP output energy (full-fidelity mode)
    std::vector<TraceRow> trace;   // filled only when requested
};

// Frame-based simulation against the physical machine: same-family changes
// (sleep/wake, DCM retune) apply within the frame; cross-family changes hold
// the machine in the matching transition configuration for a deterministic
// ceil(trans_frames) frames, during which it serves nothing and cross-family
// commands are ignored (the reconfiguration is allowed to finish).
SimMetrics run_simulation(Controller& controller, const ScenarioConfig& cfg,
                          const std::vector<int>& requests, bool keep_trace = false);
SimMetrics run_simulation(Controller& controller, const ScenarioConfig& cfg,
                          bool keep_trace = false);

// CSV trace export, schema: frame,cr_hex,cf1,cf2,action,served,requested,power_w
void write_trace_csv(const std::vector<TraceRow>& trace, const StateSpace& space,
                     const std::string& path);

// One metrics row per scenario per controller. Controllers are built fresh
// per (scenario, index) by the factory, so sweeps can run scenarios in
// parallel; factories for MDP controllers re-solve per scenario.
struct SweepRow {
    int scenario_index = 0;
    std::string controller;
    SimMetrics metrics;
};
using ControllerFactory =
    std::function<std::unique_ptr<Controller>(const ScenarioConfig&)>;
std::vector<SweepRow> sweep(const std::vector<ControllerFactory>& controllers,
                            const std::vector<ScenarioConfig>& scenarios);

}  // namespace mrcs
