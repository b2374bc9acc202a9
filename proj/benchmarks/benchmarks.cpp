#include <benchmark/benchmark.h>

#include <random>

#include "mrcs/channelizer.hpp"
#include "mrcs/filter_design.hpp"
#include "mrcs/mdp_model.hpp"
#include "mrcs/mdp_solver.hpp"
#include "mrcs/policy_io.hpp"
#include "mrcs/sim.hpp"

namespace {

using namespace mrcs;

std::vector<cplx> random_samples(size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    return x;
}

const std::vector<double>& prototype() {
    static const std::vector<double> taps = design_prototype(FilterSpec{}).taps;
    return taps;
}

void BM_RemezDesign(benchmark::State& state) {
    FilterSpec spec;
    spec.num_taps = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(design_prototype(spec).taps);
}
BENCHMARK(BM_RemezDesign)->Arg(64)->Arg(192);

void BM_DftfbProcess(benchmark::State& state) {
    Dftfb bank(prototype(), 8);
    const std::vector<cplx> x = random_samples(4096, 7);
    for (auto _ : state) benchmark::DoNotOptimize(bank.process(x));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_DftfbProcess);

void BM_DcmProcess(benchmark::State& state) {
    Dcm dcm(prototype(), 8, 3);
    const std::vector<cplx> x = random_samples(4096, 7);
    for (auto _ : state) benchmark::DoNotOptimize(dcm.process(x));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_DcmProcess);

void BM_BuildModel(benchmark::State& state) {
    MdpParams p;
    for (auto _ : state) benchmark::DoNotOptimize(build_model(p).cr_trans.sum());
}
BENCHMARK(BM_BuildModel);

void BM_FactoredBackup(benchmark::State& state) {
    const MdpModel model = build_model(MdpParams{});
    const Eigen::VectorXd v =
        Eigen::VectorXd::LinSpaced(model.params.space.num_states(), 0.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(factored_backup(model, v, 10, 0.95).sum());
}
BENCHMARK(BM_FactoredBackup);

void BM_Solve(benchmark::State& state) {
    MdpParams p;
    p.r1 = 0.9;
    const MdpModel model = build_model(p);
    for (auto _ : state) benchmark::DoNotOptimize(solve(model).iterations);
}
BENCHMARK(BM_Solve);

void BM_PackPolicy(benchmark::State& state) {
    std::vector<int> actions(3328);
    for (size_t i = 0; i < actions.size(); ++i) actions[i] = static_cast<int>(i % 11);
    for (auto _ : state) benchmark::DoNotOptimize(pack_policy(actions));
}
BENCHMARK(BM_PackPolicy);

void BM_Simulate(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.n_frames = 10000;
    const MdpModel model = build_model(cfg.mdp_params());
    const SolveResult res = solve(model, cfg.solver);
    PolicyTable p;
    p.actions = res.policy;
    const std::vector<int> requests = gen_requests(cfg);
    for (auto _ : state) {
        MdpController ctrl(p, cfg.space);
        benchmark::DoNotOptimize(run_simulation(ctrl, cfg, requests).success_rate);
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_frames);
}
BENCHMARK(BM_Simulate);

}  // namespace

BENCHMARK_MAIN();
