#pragma once

#include <json.hpp>

#include "qldpc/codes/css_code.hpp"

namespace qldpc::io {

/// Builds a code from its JSON description:
///   {"family": "ub", "n": 63, "a": [0,1,6], "l": 3}
///   {"family": "gb", "polynomials": "n=63; a=0,1,6; b=0,8,48"}
///   {"family": "bb", "l": 12, "m": 6, "a": [[3,0],[0,1],[0,2]], "b": [[0,3],[1,0],[2,0]]}
///   {"family": "custom", "h_x": ["1100", ...], "h_z": [...]}
/// An optional "name" lands in the metadata. Errors are Errc::parse_error or
/// whatever the constructor throws.
codes::CssCode code_from_json(const nlohmann::json& j);

/// Reads and parses a code file.
codes::CssCode load_code(const std::string& path);

}  // namespace qldpc::io
