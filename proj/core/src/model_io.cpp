#include "mrcs/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "mrcs/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "model container assumes a little-endian host");

namespace mrcs {

namespace {

constexpr char kMagic[4] = {'M', 'M', 'D', 'L'};
constexpr std::uint8_t kVersion = 1;

void put_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

void put_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}

double get_f64(std::ifstream& in) {
    double v = 0.0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

void put_matrix(std::ofstream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
}

Eigen::MatrixXd get_matrix(std::ifstream& in, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = get_f64(in);
    return m;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void save_model(const MdpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("model: cannot write " + path);
    const StateSpace& sp = model.params.space;
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u32(out, static_cast<std::uint32_t>(sp.num_channels));
    put_u32(out, sp.transition_states ? 1 : 0);
    put_u32(out, static_cast<std::uint32_t>(sp.num_actions));
    put_f64(out, model.params.request.beta);
    put_f64(out, model.params.request.p_start);
    put_f64(out, model.params.request.p_stop);
    put_f64(out, model.params.power.sleep);
    put_f64(out, model.params.power.dcm);
    put_f64(out, model.params.power.dftfb);
    put_f64(out, model.params.power.transition);
    put_f64(out, model.params.trans_frames);
    put_f64(out, model.params.r1);
    put_matrix(out, model.cr_trans);
    for (const auto& t : model.cf_trans) put_matrix(out, t);
    put_matrix(out, model.reward_base);
    if (!out) throw IoError("model: write failed for " + path);
}

MdpModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("model: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kMagic, 4))
        throw IoError("model: bad magic in " + path);
    if (in.get() != kVersion) throw IoError("model: unsupported version in " + path);

    MdpModel m;
    m.params.space.num_channels = static_cast<int>(get_u32(in));
    m.params.space.transition_states = get_u32(in) != 0;
    m.params.space.num_actions = static_cast<int>(get_u32(in));
    m.params.request.beta = get_f64(in);
    m.params.request.p_start = get_f64(in);
    m.params.request.p_stop = get_f64(in);
    m.params.power.sleep = get_f64(in);
    m.params.power.dcm = get_f64(in);
    m.params.power.dftfb = get_f64(in);
    m.params.power.transition = get_f64(in);
    m.params.trans_frames = get_f64(in);
    m.params.r1 = get_f64(in);
    if (!in) throw IoError("model: truncated header in " + path);
    m.params.validate();

    const StateSpace& sp = m.params.space;
    m.cr_trans = get_matrix(in, sp.num_cr(), sp.num_cr());
    m.cf_trans.resize(sp.num_base_actions());
    for (auto& t : m.cf_trans) t = get_matrix(in, sp.num_cf1(), sp.num_cf());
    m.reward_base = get_matrix(in, sp.num_cr(), sp.num_cf());
    if (!in) throw IoError("model: truncated matrix data in " + path);
    return m;
}

void save_model_json(const MdpModel& model, const std::string& path) {
    const StateSpace& sp = model.params.space;
    nlohmann::json j;
    j["format"] = "mmdl";
    j["version"] = kVersion;
    j["space"] = {{"num_channels", sp.num_channels},
                  {"transition_states", sp.transition_states},
                  {"num_actions", sp.num_actions},
                  {"num_cr", sp.num_cr()},
                  {"num_cf", sp.num_cf()},
                  {"num_cf1", sp.num_cf1()},
                  {"num_states", sp.num_states()}};
    j["request"] = {{"beta", model.params.request.beta},
                    {"p_start", model.params.request.p_start},
                    {"p_stop", model.params.request.p_stop}};
    j["power_w"] = {{"sleep", model.params.power.sleep},
                    {"dcm", model.params.power.dcm},
                    {"dftfb", model.params.power.dftfb},
                    {"transition", model.params.power.transition}};
    j["trans_frames"] = model.params.trans_frames;
    j["r1"] = model.params.r1;
    j["element_count"] = model.element_count();
    j["dense_element_count"] = model.dense_element_count();
    j["cr_trans"] = matrix_json(model.cr_trans);
    nlohmann::json cf = nlohmann::json::array();
    for (int a = 0; a < sp.num_base_actions(); ++a)
        cf.push_back({{"action", sp.action_name(a)}, {"rows", matrix_json(model.cf_trans[a])}});
    j["cf_trans"] = std::move(cf);
    j["reward_base"] = matrix_json(model.reward_base);

    std::ofstream out(path);
    if (!out) throw IoError("model: cannot write " + path);
    out << j.dump(1, '\t') << "\n";
    if (!out) throw IoError("model: write failed for " + path);
}

}  // namespace mrcs
