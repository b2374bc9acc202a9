#pragma once

#include <string>

#include "mrcs/mdp_model.hpp"

namespace mrcs {

// Model container: "MMDL" magic, version byte, dimension header, then the
// parameter block and the factored matrices as row-major 64-bit
// little-endian floats.
void save_model(const MdpModel& model, const std::string& path);
MdpModel load_model(const std::string& path);

// Human-readable JSON mirror of the same content.
void save_model_json(const MdpModel& model, const std::string& path);

}  // namespace mrcs
