#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hanoi/automorphism.hpp"
#include "hanoi/contraction.hpp"
#include "hanoi/generators.hpp"

namespace hanoi {

/// {"k": 3, "initial": 0, "states": [{"perm": [[0, 1]], "next": [0, 1, 1]}, ...]}
nlohmann::json automorphism_to_json(const TreeAutomorphism &g);
TreeAutomorphism automorphism_from_json(const nlohmann::json &j);

/// {"k": 4, "generators": [{"name": "a01", "cycles": [[0, 1]], "inactive": [2, 3]}, ...]}
/// The identity member is not written.
nlohmann::json group_to_json(const GeneratorSet &s);
GeneratorSet group_from_json(const nlohmann::json &j);

/// {"k": 3, "elements": [{"name": "a01", "word": ["a01"], "machine": {...}}, ...]}
nlohmann::json nucleus_to_json(const Nucleus &n);
Nucleus nucleus_from_json(const nlohmann::json &j);

/// A family name such as "Hanoi(4)" or an inline JSON group definition.
GeneratorSet resolve_group(std::string_view text);
/// Reads a JSON group definition file.
GeneratorSet load_group_file(const std::string &path);

} // namespace hanoi
