#include "mrcs/policy_io.hpp"

#include <cstdio>
#include <fstream>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

constexpr char kMagic[4] = {'M', 'P', 'O', 'L'};
constexpr std::uint8_t kVersion = 1;

std::uint32_t payload_checksum(const std::vector<std::uint8_t>& payload) {
    std::uint32_t sum = 0;
    for (std::uint8_t b : payload) sum += b;  // mod 2^32 by unsigned wraparound
    return sum;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                               static_cast<std::uint8_t>(v >> 16),
                               static_cast<std::uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    std::uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> pack_policy(const std::vector<int>& actions) {
    std::vector<std::uint8_t> out((actions.size() + 1) / 2, 0);
    for (size_t s = 0; s < actions.size(); ++s) {
        const int a = actions[s];
        if (a < 0 || a > 15)
            throw EncodingError("policy: action " + std::to_string(a) +
                                " does not fit in 4 bits");
        out[s / 2] |= static_cast<std::uint8_t>(a) << (s % 2 == 0 ? 0 : 4);
    }
    return out;
}

std::vector<int> unpack_policy(const std::vector<std::uint8_t>& packed, int num_states) {
    if (num_states < 0 || packed.size() != static_cast<size_t>((num_states + 1) / 2))
        throw ShapeError("policy: packed size does not match the state count");
    std::vector<int> actions(num_states);
    for (int s = 0; s < num_states; ++s)
        actions[s] = (packed[s / 2] >> (s % 2 == 0 ? 0 : 4)) & 0xF;
    return actions;
}

void save_policy(const PolicyTable& policy, const std::string& path) {
    const auto payload = pack_policy(policy.actions);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("policy: cannot write " + path);
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u32(out, static_cast<std::uint32_t>(policy.actions.size()));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    put_u32(out, payload_checksum(payload));
    if (!out) throw IoError("policy: write failed for " + path);
}

PolicyTable load_policy(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("policy: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kMagic, 4))
        throw IoError("policy: bad magic in " + path);
    const int version = in.get();
    if (version != kVersion) throw IoError("policy: unsupported version in " + path);
    const std::uint32_t count = get_u32(in);
    std::vector<std::uint8_t> payload((count + 1) / 2);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    const std::uint32_t stored = get_u32(in);
    if (!in) throw IoError("policy: truncated file " + path);
    if (stored != payload_checksum(payload))
        throw IoError("policy: checksum mismatch in " + path);
    PolicyTable p;
    p.actions = unpack_policy(payload, static_cast<int>(count));
    return p;
}

}  // namespace mrcs
