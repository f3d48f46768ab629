#pragma once

#include <string>

#include <json.hpp>

#include "tangle/qstate.hpp"

namespace tangle {

// StateSpec JSON:
//   {"n": int, "amplitudes": [[re, im], ...]}
// or
//   {"n": int, "terms": [{"basis": "0011", "re": x, "im": y}, ...],
//    "normalize": bool}
// Bitstrings read MSB-first (qubit 1 leftmost).
StateSpec spec_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const QState& state);

QState load_state_file(const std::string& path);
void save_state_file(const QState& state, const std::string& path);

}  // namespace tangle
