#include "tangle/qstate_io.hpp"

#include <fstream>
#include <stdexcept>

namespace tangle {

StateSpec spec_from_json(const nlohmann::json& j) {
  StateSpec spec;
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw std::invalid_argument("StateSpec JSON: missing integer field \"n\"");
  }
  spec.n = j["n"].get<int>();
  spec.normalize_on_load = j.value("normalize", false);

  if (j.contains("amplitudes")) {
    for (const auto& pair : j["amplitudes"]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("StateSpec JSON: amplitudes must be [re, im] pairs");
      }
      spec.dense.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  } else if (j.contains("terms")) {
    for (const auto& t : j["terms"]) {
      SparseTerm term;
      term.basis = t.at("basis").get<std::string>();
      term.re = t.value("re", 0.0);
      term.im = t.value("im", 0.0);
      spec.terms.push_back(std::move(term));
    }
  } else {
    throw std::invalid_argument("StateSpec JSON: need \"amplitudes\" or \"terms\"");
  }
  return spec;
}

nlohmann::json state_to_json(const QState& state) {
  nlohmann::json j;
  j["n"] = state.n;
  nlohmann::json amps = nlohmann::json::array();
  for (std::int64_t i = 0; i < state.dim(); ++i) {
    amps.push_back({state.amps[i].real(), state.amps[i].imag()});
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

QState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  return from_spec(spec_from_json(j));
}

void save_state_file(const QState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << state_to_json(state).dump(2) << '\n';
}

}  // namespace tangle
