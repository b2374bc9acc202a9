#include "mrcs/sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <random>

#include "mrcs/channelizer.hpp"
#include "mrcs/errors.hpp"
#include "mrcs/filter_design.hpp"

namespace mrcs {

namespace {

// Full-fidelity data path: synthesizes one frame of multi-tone samples (one
// unit tone per requested channel center) and pushes it through whichever
// channelizer is active. Sleep retains DSP state; transitions process nothing.
class FidelityPath {
public:
    explicit FidelityPath(const StateSpace& space)
        : space_(space),
          proto_([&] {
              FilterSpec spec;
              spec.num_channels = space.num_channels;
              return design_prototype(spec).taps;
          }()),
          dftfb_(proto_, space.num_channels),
          dcm_(proto_, space.num_channels, 0) {}

    void frame(int cr, int cf) {
        const int M = space_.num_channels;
        std::vector<cplx> x(static_cast<size_t>(8) * M);
        for (size_t i = 0; i < x.size(); ++i, ++n_)
            for (int ch = 0; ch < M; ++ch)
                if ((cr >> ch) & 1)
                    x[i] += std::polar(1.0, 2.0 * std::numbers::pi * ch *
                                                static_cast<double>(n_) / M);
        const CfKind kind = space_.cf_kind(cf);
        if (kind == CfKind::Dftfb) {
            for (const auto& row : dftfb_.process(x))
                for (const cplx& v : row) energy_ += std::norm(v);
        } else if (kind == CfKind::Dcm) {
            const int ch = space_.dcm_channel(cf);
            if (dcm_.channel() != ch) dcm_.retune(ch);
            for (const cplx& v : dcm_.process(x)) energy_ += std::norm(v);
        }
    }

    double energy() const { return energy_; }

private:
    StateSpace space_;
    std::vector<double> proto_;
    Dftfb dftfb_;
    Dcm dcm_;
    long long n_ = 0;
    double energy_ = 0.0;
};

}  // namespace

std::vector<int> gen_iid_requests(const RequestModel& params, int num_channels,
                                  int n_frames, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto fresh = [&] {
        int cr = 0;
        for (int ch = 0; ch < num_channels; ++ch)
            if (u(rng) < params.beta) cr |= 1 << ch;
        return cr;
    };
    std::vector<int> trace(n_frames);
    int cr = 0;
    for (int t = 0; t < n_frames; ++t) {
        if (cr == 0)
            cr = u(rng) < params.p_start ? fresh() : 0;
        else
            cr = u(rng) < params.p_stop ? 0 : fresh();
        trace[t] = cr;
    }
    return trace;
}

std::vector<int> gen_seq_requests(const SeqParams& params, int num_channels,
                                  int n_frames, std::uint64_t seed) {
    if (!(params.mean_dwell >= 1.0))
        throw ConfigError("sim: mean_dwell must be >= 1");
    if (!(params.mean_gap >= 0.0)) throw ConfigError("sim: mean_gap must be >= 0");
    std::mt19937_64 rng(seed);
    // dwell = 1 + Geom(1/mean_dwell) has mean mean_dwell; gap = Geom(p) with
    // p = 1/(1 + mean_gap) has mean mean_gap (and is identically 0 for 0).
    std::geometric_distribution<int> dwell_extra(1.0 / params.mean_dwell);
    std::geometric_distribution<int> gap_len(1.0 / (1.0 + params.mean_gap));
    std::uniform_int_distribution<int> pick(0, num_channels - 1);

    std::vector<int> trace;
    trace.reserve(n_frames);
    int next_rr = 0;
    while (static_cast<int>(trace.size()) < n_frames) {
        for (int g = gap_len(rng); g > 0 && static_cast<int>(trace.size()) < n_frames;
             --g)
            trace.push_back(0);
        int ch;
        if (params.channel_selection == ChannelSelection::RoundRobin) {
            ch = next_rr;
            next_rr = (next_rr + 1) % num_channels;
        } else {
            ch = pick(rng);
        }
        for (int d = 1 + dwell_extra(rng);
             d > 0 && static_cast<int>(trace.size()) < n_frames; --d)
            trace.push_back(1 << ch);
    }
    return trace;
}

std::vector<int> gen_requests(const ScenarioConfig& cfg) {
    return cfg.use_case == UseCase::Iid
               ? gen_iid_requests(cfg.request, cfg.space.num_channels, cfg.n_frames,
                                  cfg.seed)
               : gen_seq_requests(cfg.seq, cfg.space.num_channels, cfg.n_frames,
                                  cfg.seed);
}

SimMetrics run_simulation(Controller& controller, const ScenarioConfig& cfg,
                          const std::vector<int>& requests, bool keep_trace) {
    cfg.validate();
    // The physical machine always has transition states regardless of whether
    // the controller's model does.
    StateSpace machine = cfg.space;
    machine.transition_states = true;
    const int countdown_frames = static_cast<int>(std::ceil(cfg.trans_frames));

    controller.reset();
    std::optional<FidelityPath> dsp;
    if (cfg.full_fidelity) dsp.emplace(machine);
    int cf = machine.cf_sleep_dftfb();
    int countdown = 0;   // frames left in the current transition
    int pending = cf;    // configuration reached when the countdown ends
    double power_sum = 0.0;
    SimMetrics m;
    m.frames = static_cast<std::int64_t>(requests.size());
    if (keep_trace) m.trace.reserve(requests.size());

    for (size_t t = 0; t < requests.size(); ++t) {
        const int cr = requests[t];
        if (cr < 0 || cr >= machine.num_cr())
            throw ConfigError("sim: request vector outside the channel range");
        const bool in_trans = countdown > 0;
        const int action = controller.step({cr, cf, in_trans});
        if (action < 0 || action >= cfg.space.num_actions)
            throw ConfigError("sim: controller emitted an invalid action");

        if (!machine.is_continue_action(action)) {
            const ActionTarget tgt = action_target(machine, action);
            if (in_trans) {
                // Cross-family commands are ignored mid-flight; same-family
                // ones may redirect where the reconfiguration lands.
                if (tgt.dcm_family == dcm_side(machine.cf_kind(cf)))
                    pending = tgt.target_cf;
            } else if (tgt.dcm_family == dcm_side(machine.cf_kind(cf)) ||
                       cfg.trans_frames < 1.0) {
                cf = tgt.target_cf;  // completes within the frame
            } else {
                cf = tgt.dcm_family ? machine.cf_trans_dcm()
                                    : machine.cf_trans_dftfb();
                pending = tgt.target_cf;
                countdown = countdown_frames;
            }
        }

        // Outcome of this frame under the configuration active during it.
        const CfKind kind = machine.cf_kind(cf);
        int served = 0;
        if (kind == CfKind::Dftfb)
            served = sigma(cr);
        else if (kind == CfKind::Dcm)
            served = (cr >> machine.dcm_channel(cf)) & 1;
        const double power = cfg.power.of(kind);
        if (dsp) dsp->frame(cr, cf);
        m.served += served;
        m.requested += sigma(cr);
        power_sum += power;
        if (keep_trace)
            m.trace.push_back({static_cast<int>(t), cr, cf, action, served,
                               sigma(cr), power});

        if (countdown > 0 && --countdown == 0) cf = pending;
    }

    if (dsp) m.fidelity_energy = dsp->energy();
    m.success_rate = m.requested > 0
                         ? static_cast<double>(m.served) / m.requested
                         : 1.0;
    m.avg_power = m.frames > 0 ? power_sum / m.frames : cfg.power.of(machine.cf_kind(cf));
    m.normalized_power_savings = (cfg.power.max_power() - m.avg_power) /
                                 (cfg.power.max_power() - cfg.power.min_power());
    return m;
}

SimMetrics run_simulation(Controller& controller, const ScenarioConfig& cfg,
                          bool keep_trace) {
    return run_simulation(controller, cfg, gen_requests(cfg), keep_trace);
}

void write_trace_csv(const std::vector<TraceRow>& trace, const StateSpace& space,
                     const std::string& path) {
    StateSpace machine = space;
    machine.transition_states = true;
    std::ofstream out(path);
    if (!out) throw IoError("sim: cannot write " + path);
    out << "# schema: mrcs-trace-v1\n";
    out << "frame,cr_hex,cf1,cf2,action,served,requested,power_w\n";
    char line[160];
    for (const TraceRow& r : trace) {
        const CfKind kind = machine.cf_kind(r.cf);
        const int cf2 = kind == CfKind::Dcm ? machine.dcm_channel(r.cf) : 0;
        std::snprintf(line, sizeof line, "%d,%02x,%d,%d,%d,%d,%d,%.9e\n", r.frame,
                      static_cast<unsigned>(r.cr), static_cast<int>(kind), cf2,
                      r.action, r.served, r.requested, r.power_w);
        out << line;
    }
    if (!out) throw IoError("sim: write failed for " + path);
}

std::vector<SweepRow> sweep(const std::vector<ControllerFactory>& controllers,
                            const std::vector<ScenarioConfig>& scenarios) {
    if (scenarios.empty()) throw ConfigError("sim: sweep needs at least one scenario");
    if (controllers.empty())
        throw ConfigError("sim: sweep needs at least one controller");

    std::vector<std::future<std::vector<SweepRow>>> jobs;
    jobs.reserve(scenarios.size());
    for (size_t i = 0; i < scenarios.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
            const ScenarioConfig& sc = scenarios[i];
            const std::vector<int> requests = gen_requests(sc);
            std::vector<SweepRow> rows;
            rows.reserve(controllers.size());
            for (const ControllerFactory& make : controllers) {
                std::unique_ptr<Controller> c = make(sc);
                rows.push_back({static_cast<int>(i), c->name(),
                                run_simulation(*c, sc, requests)});
            }
            return rows;
        }));
    }
    std::vector<SweepRow> all;
    for (auto& j : jobs)
        for (SweepRow& r : j.get()) all.push_back(std::move(r));
    return all;
}

}  // namespace mrcs
