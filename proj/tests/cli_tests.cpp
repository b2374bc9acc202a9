// End-to-end tests for the mrcs command-line tool. argv[1] is the path to the
// built binary; each check spawns it against a scratch directory.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_bin;
fs::path g_root;

void check(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

int count_value_lines(const fs::path& p) {
    std::ifstream f(p);
    std::string line;
    int n = 0;
    while (std::getline(f, line))
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-mrcs>\n");
        return 2;
    }
    g_bin = argv[1];
    g_root = fs::temp_directory_path() / "mrcs_cli_tests";
    fs::remove_all(g_root);
    fs::create_directories(g_root);

    // solve with defaults: policy file with the expected framing and counts.
    {
        const fs::path d = g_root / "solve";
        check(run("solve --seed 5 --out-dir " + d.string()) == 0, "solve exits 0");
        check(fs::exists(d / "policy.mpol") && fs::file_size(d / "policy.mpol") == 1677,
              "policy.mpol is 1677 bytes");
        const std::string manifest = slurp(d / "manifest.json");
        check(manifest.find("\"factored\": 66394") != std::string::npos,
              "manifest reports 66394 factored elements");
        check(manifest.find("\"num_states\": 3328") != std::string::npos,
              "manifest reports 3328 states");
        check(manifest.find("\"converged\": true") != std::string::npos,
              "manifest reports convergence");
    }

    // Dropping the transition states shrinks the factored model.
    {
        const fs::path d = g_root / "solve_nt";
        check(run("solve --no-transition-states --out-dir " + d.string()) == 0,
              "solve --no-transition-states exits 0");
        const std::string manifest = slurp(d / "manifest.json");
        check(manifest.find("\"factored\": 66020") != std::string::npos,
              "manifest reports 66020 factored elements without transitions");
        check(manifest.find("\"num_states\": 2816") != std::string::npos,
              "manifest reports 2816 states without transitions");
    }

    // 13-action mode is accepted; an unsupported count is a config error.
    {
        const fs::path d = g_root / "solve13";
        check(run("solve --actions 13 --out-dir " + d.string()) == 0,
              "solve --actions 13 exits 0");
        check(run("solve --actions 12 --out-dir " + d.string()) == 2,
              "solve --actions 12 exits 2");
    }

    // design-filter artifacts, and determinism across reruns.
    {
        const fs::path d1 = g_root / "filter1";
        const fs::path d2 = g_root / "filter2";
        check(run("design-filter --out-dir " + d1.string()) == 0,
              "design-filter exits 0");
        check(run("design-filter --out-dir " + d2.string()) == 0,
              "design-filter rerun exits 0");
        check(count_value_lines(d1 / "prototype.txt") == 192,
              "prototype.txt holds 192 coefficients");
        std::ifstream csv(d1 / "channel_response.csv");
        std::string schema, header;
        std::getline(csv, schema);
        std::getline(csv, header);
        int columns = 1;
        for (char c : header) columns += c == ',';
        check(columns == 9, "channel_response.csv has 9 columns");
        check(slurp(d1 / "prototype.txt") == slurp(d2 / "prototype.txt"),
              "prototype.txt is byte-identical across reruns");
        check(slurp(d1 / "channel_response.csv") == slurp(d2 / "channel_response.csv"),
              "channel_response.csv is byte-identical across reruns");
    }

    // build-model round trip artifacts.
    {
        const fs::path d = g_root / "model";
        check(run("build-model --out-dir " + d.string()) == 0, "build-model exits 0");
        check(fs::exists(d / "model.mmdl") && fs::exists(d / "model.json"),
              "build-model writes model.mmdl and model.json");
    }

    // simulate produces metrics and a trace.
    {
        const fs::path d = g_root / "sim";
        check(run("simulate --seed 7 --out-dir " + d.string()) == 0,
              "simulate exits 0");
        check(slurp(d / "metrics.csv").find("mrcs-metrics-v1") != std::string::npos,
              "metrics.csv carries its schema");
        check(slurp(d / "trace.csv").find("mrcs-trace-v1") != std::string::npos,
              "trace.csv carries its schema");
    }

    // Exit code 2: malformed and invalid configs.
    {
        const fs::path bad = g_root / "bad.json";
        write_file(bad, "{ this is not json");
        check(run("solve --config " + bad.string()) == 2,
              "malformed config JSON exits 2");
        write_file(bad, R"({"r1": 3.0})");
        check(run("solve --config " + bad.string()) == 2,
              "out-of-range config value exits 2");
        write_file(bad, R"({"unknown_key": 1})");
        check(run("solve --config " + bad.string()) == 2, "unknown config key exits 2");
        check(run("no-such-command") == 2, "unknown subcommand exits 2");
    }

    // Exit code 3: solver starved of iterations.
    {
        const fs::path cfg = g_root / "starved.json";
        write_file(cfg, R"({"solver": {"max_iterations": 2, "epsilon": 1e-12}})");
        const fs::path d = g_root / "starved";
        check(run("solve --config " + cfg.string() + " --out-dir " + d.string()) == 3,
              "non-converging solve exits 3");
        check(slurp(d / "manifest.json").find("\"converged\": false") !=
                  std::string::npos,
              "manifest records the failed convergence");
    }

    // Exit code 4: unwritable output directory.
    {
        check(run("solve --out-dir /proc/nope") == 4, "unwritable out-dir exits 4");
    }

    fs::remove_all(g_root);
    std::printf("%s\n", g_failures == 0 ? "cli tests passed" : "cli tests FAILED");
    return g_failures == 0 ? 0 : 1;
}
