#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mrcs/errors.hpp"
#include "mrcs/model_io.hpp"

using namespace mrcs;
namespace fs = std::filesystem;

TEST_CASE("binary model round trip is lossless") {
    MdpParams p;
    p.request.beta = 0.37;
    p.trans_frames = 4.67;
    p.r1 = 0.8;
    const MdpModel m = build_model(p);
    const fs::path path = fs::temp_directory_path() / "mrcs_model_rt.mmdl";
    save_model(m, path.string());
    const MdpModel back = load_model(path.string());
    CHECK(back.params.space.num_states() == m.params.space.num_states());
    CHECK(back.params.request.beta == m.params.request.beta);
    CHECK(back.params.trans_frames == m.params.trans_frames);
    CHECK(back.params.r1 == m.params.r1);
    CHECK((back.cr_trans - m.cr_trans).lpNorm<Eigen::Infinity>() == 0.0);
    REQUIRE(back.cf_trans.size() == m.cf_trans.size());
    for (size_t a = 0; a < m.cf_trans.size(); ++a)
        CHECK((back.cf_trans[a] - m.cf_trans[a]).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((back.reward_base - m.reward_base).lpNorm<Eigen::Infinity>() == 0.0);
    fs::remove(path);
}

TEST_CASE("bad magic, truncation, and missing files are IoError") {
    const fs::path path = fs::temp_directory_path() / "mrcs_model_bad.mmdl";
    {
        std::ofstream f(path, std::ios::binary);
        f << "XXXX rest of the file";
    }
    CHECK_THROWS_AS(load_model(path.string()), IoError);

    save_model(build_model(MdpParams{}), path.string());
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS_AS(load_model(path.string()), IoError);
    fs::remove(path);
    CHECK_THROWS_AS(load_model(path.string()), IoError);
}

TEST_CASE("json mirror carries the element counts") {
    const MdpModel m = build_model(MdpParams{});
    const fs::path path = fs::temp_directory_path() / "mrcs_model.json";
    save_model_json(m, path.string());
    std::ifstream f(path);
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("66394") != std::string::npos);
    CHECK(text.find("121831424") != std::string::npos);
    fs::remove(path);
}
