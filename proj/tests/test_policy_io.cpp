#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "mrcs/errors.hpp"
#include "mrcs/policy_io.hpp"

using namespace mrcs;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("nibble packing puts the even state in the low nibble") {
    const std::vector<std::uint8_t> packed = pack_policy({3, 10});
    REQUIRE(packed.size() == 1);
    CHECK(packed[0] == 0xA3);
    CHECK(unpack_policy(packed, 2) == std::vector<int>{3, 10});
}

TEST_CASE("odd length pads the final high nibble with zero") {
    const std::vector<std::uint8_t> packed = pack_policy({7, 1, 12});
    REQUIRE(packed.size() == 2);
    CHECK(packed[0] == 0x17);
    CHECK(packed[1] == 0x0C);
    CHECK(unpack_policy(packed, 3) == std::vector<int>{7, 1, 12});
}

TEST_CASE("3328 states pack into 1664 bytes") {
    std::vector<int> actions(3328);
    std::mt19937_64 rng(1);
    for (auto& a : actions) a = static_cast<int>(rng() % 11);
    const auto packed = pack_policy(actions);
    CHECK(packed.size() == 1664);
    CHECK(unpack_policy(packed, 3328) == actions);
}

TEST_CASE("actions beyond 4 bits are rejected") {
    CHECK_THROWS_AS(pack_policy({0, 16}), EncodingError);
    CHECK_THROWS_AS(pack_policy({-1}), EncodingError);
}

TEST_CASE("unpack size mismatch is rejected") {
    CHECK_THROWS_AS(unpack_policy({0xA3}, 5), ShapeError);
}

TEST_CASE("policy file round trip") {
    PolicyTable p;
    p.actions.resize(3328);
    std::mt19937_64 rng(2);
    for (auto& a : p.actions) a = static_cast<int>(rng() % 11);
    p.gamma = 0.97;
    p.r1 = 0.8;
    const fs::path path = temp_file("mrcs_policy_roundtrip.mpol");
    save_policy(p, path.string());
    CHECK(fs::file_size(path) == 1677);  // 4 magic + 1 version + 4 count + 1664 + 4 sum
    const PolicyTable back = load_policy(path.string());
    CHECK(back.actions == p.actions);
    fs::remove(path);
}

TEST_CASE("corrupted payload fails the checksum") {
    PolicyTable p;
    p.actions = {1, 2, 3, 4, 5, 6};
    const fs::path path = temp_file("mrcs_policy_corrupt.mpol");
    save_policy(p, path.string());
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(10);  // inside the packed payload
        char b = 0x7F;
        f.write(&b, 1);
    }
    CHECK_THROWS_AS(load_policy(path.string()), IoError);
    fs::remove(path);
}

TEST_CASE("bad magic and truncation are IoError") {
    const fs::path path = temp_file("mrcs_policy_bad.mpol");
    {
        std::ofstream f(path, std::ios::binary);
        f << "NOPE" << '\x01';
    }
    CHECK_THROWS_AS(load_policy(path.string()), IoError);
    {
        PolicyTable p;
        p.actions = {1, 2, 3, 4};
        save_policy(p, path.string());
        fs::resize_file(path, fs::file_size(path) - 3);
    }
    CHECK_THROWS_AS(load_policy(path.string()), IoError);
    fs::remove(path);
    CHECK_THROWS_AS(load_policy(path.string()), IoError);  // missing file
}
