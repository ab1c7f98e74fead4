#pragma once

#include "bbm/problem.hpp"
#include "bbm/quadrature.hpp"
#include "bbm/reference.hpp"

#include <map>
#include <string>

namespace bbm {

/// Per-run settings parsed alongside the ProblemSpec.
struct RunSettings {
    ProblemSpec spec;
    Grid grid = Grid::uniform(0.0, 10.0, 33, 0.0, 10.0, 21);
    QuadratureConfig quad;
    FdConfig fd;
    PicardConfig picard;
};

/// Flat key-value config: one `key = value` per line, `#` comments. Unknown
/// keys are rejected with a suggestion; duplicates are an error naming the
/// line.
RunSettings parse_config_text(const std::string& text);
RunSettings parse_config(const std::string& path);

/// Applies one `key=value` override on top of parsed settings.
void apply_override(std::map<std::string, std::string>& kv, const std::string& assignment);

/// Re-serialization; parse(serialize(s)) reproduces an equal spec.
std::string serialize_config(const RunSettings& s);

/// The raw key-value map form used by overrides.
std::map<std::string, std::string> config_to_map(const RunSettings& s);
RunSettings settings_from_map(const std::map<std::string, std::string>& kv);

} // namespace bbm
