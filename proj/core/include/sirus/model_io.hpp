#pragma once

#include <string>

#include "sirus/rules.hpp"

namespace sirus {

// Versioned human-readable model document (JSON). Doubles are serialized with
// shortest round-trip precision, so a reloaded model predicts bit-identically.
std::string model_to_text(const SirusModel& model);
SirusModel model_from_text(const std::string& text);

void save_model(const SirusModel& model, const std::string& path);
SirusModel load_model(const std::string& path);

}  // namespace sirus
