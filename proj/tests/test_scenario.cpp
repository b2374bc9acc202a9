#include <doctest.h>

#include <filesystem>

#include "mrcs/errors.hpp"
#include "mrcs/scenario.hpp"

using namespace mrcs;
namespace fs = std::filesystem;

TEST_CASE("defaults validate and round trip through json") {
    ScenarioConfig c;
    c.validate();
    const std::string text = scenario_to_json_text(c);
    const ScenarioConfig back = scenario_from_json_text(text);
    CHECK(back.use_case == UseCase::Iid);
    CHECK(back.space.num_channels == 8);
    CHECK(back.request.beta == c.request.beta);
    CHECK(back.seq.mean_dwell == c.seq.mean_dwell);
    CHECK(back.power.dftfb == c.power.dftfb);
    CHECK(back.trans_frames == c.trans_frames);
    CHECK(back.n_frames == c.n_frames);
    CHECK(back.seed == c.seed);
    CHECK(back.r1 == c.r1);
    CHECK(back.solver.gamma == c.solver.gamma);
    CHECK(scenario_to_json_text(back) == text);
}

TEST_CASE("file round trip") {
    ScenarioConfig c;
    c.use_case = UseCase::Seq;
    c.seq.mean_dwell = 9.0;
    c.seq.channel_selection = ChannelSelection::RoundRobin;
    c.seed = 42;
    const fs::path path = fs::temp_directory_path() / "mrcs_scenario.json";
    save_scenario(c, path.string());
    const ScenarioConfig back = load_scenario(path.string());
    CHECK(back.use_case == UseCase::Seq);
    CHECK(back.seq.mean_dwell == 9.0);
    CHECK(back.seq.channel_selection == ChannelSelection::RoundRobin);
    CHECK(back.seed == 42);
    fs::remove(path);
    CHECK_THROWS_AS(load_scenario(path.string()), IoError);
}

TEST_CASE("unknown keys fail loudly") {
    CHECK_THROWS_AS(scenario_from_json_text(R"({"use_cse": "iid"})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"space": {"channels": 8}})"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"solver": {"gama": 0.9}})"),
                    ConfigError);
}

TEST_CASE("bad values are ConfigError") {
    CHECK_THROWS_AS(scenario_from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text("[1,2,3]"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"use_case": "other"})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"r1": "high"})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"r1": 2.0})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"n_frames": 0})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"seq": {"mean_dwell": 0.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        scenario_from_json_text(R"({"seq": {"channel_selection": "sorted"}})"),
        ConfigError);
    CHECK_THROWS_AS(scenario_from_json_text(R"({"space": {"num_actions": 12}})"),
                    ConfigError);
}

TEST_CASE("fitted request matches the episode moments") {
    SeqParams seq;
    seq.mean_dwell = 4.0;
    seq.mean_gap = 2.0;
    const RequestModel r = fitted_request(seq, 8);
    CHECK(r.beta == doctest::Approx(1.0 / 8));
    CHECK(r.p_start == doctest::Approx(1.0 / 3.0));
    CHECK(r.p_stop == doctest::Approx(0.25 * (2.0 / 3.0)));
}

TEST_CASE("iid scenarios use their request model directly") {
    ScenarioConfig c;
    c.request.beta = 0.4;
    CHECK(c.mdp_params().request.beta == 0.4);
    c.use_case = UseCase::Seq;
    CHECK(c.mdp_params().request.beta == doctest::Approx(1.0 / 8));
}

TEST_CASE("seq scenario model carries the exact episode chain") {
    ScenarioConfig c;
    c.use_case = UseCase::Seq;
    c.seq.mean_dwell = 4.0;
    c.seq.mean_gap = 2.0;
    const MdpModel m = build_scenario_model(c);
    for (int i = 0; i < 256; ++i)
        CHECK(m.cr_trans.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Idle row: stay idle 2/3, each single channel 1/24.
    CHECK(m.cr_trans(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(m.cr_trans(0, 1 << 3) == doctest::Approx(1.0 / 24.0));
    CHECK(m.cr_trans(0, 0b11) == 0.0);
    // Active single-channel row: dwell 3/4, idle 1/4 * 2/3, fresh 1/4 * 1/3 / 8.
    const int s = 1 << 5;
    CHECK(m.cr_trans(s, s) == doctest::Approx(0.75 + 0.25 / 24.0));
    CHECK(m.cr_trans(s, 0) == doctest::Approx(0.25 * 2.0 / 3.0));
    CHECK(m.cr_trans(s, 1 << 2) == doctest::Approx(0.25 / 24.0));
    // IID scenarios keep the Bernoulli chain untouched.
    ScenarioConfig iid;
    const MdpModel mi = build_scenario_model(iid);
    CHECK(mi.cr_trans(0, 0) == doctest::Approx(build_model(iid.mdp_params()).cr_trans(0, 0)));
}
