#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrcs {

// State -> action lookup table plus the solve context it came from. Only the
// table itself goes into the binary format; the metadata travels in run
// manifests.
struct PolicyTable {
    std::vector<int> actions;  // one ActionId per flat state
    double gamma = 0.95;
    double r1 = 0.5;
    std::string fingerprint;  // config hash of the producing scenario
};

// Two 4-bit actions per byte, even state index in the low nibble. Throws
// EncodingError if any action does not fit in 4 bits.
std::vector<std::uint8_t> pack_policy(const std::vector<int>& actions);
std::vector<int> unpack_policy(const std::vector<std::uint8_t>& packed, int num_states);

// Policy file: "MPOL" magic, version byte, u32-LE state count, packed
// nibbles, u32-LE checksum (sum of payload bytes mod 2^32).
void save_policy(const PolicyTable& policy, const std::string& path);
PolicyTable load_policy(const std::string& path);

}  // namespace mrcs
