#pragma once

#include <string>

#include "detzeta/model.hpp"

namespace detzeta {

// JSON model files; see README for the schema. Parse failures raise
// ParseError, structural defects in an otherwise well-formed document raise
// StructuralError.
SymbolicModel load_model(const std::string& path);
SymbolicModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const SymbolicModel& model);
void save_model(const SymbolicModel& model, const std::string& path);

}  // namespace detzeta
