#pragma once

#include <string>

#include "json.hpp"
#include "xtilt/forms.hpp"
#include "xtilt/xcat.hpp"

namespace xtilt::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Parses JSON text; throws std::invalid_argument on syntax errors.
Json parse_json(const std::string& text);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, const GroundRing& ring);

/// {"label": ..., "cartan": ...}; either key may be omitted on input, not both.
Json root_system_to_json(const RootSystem& rs);
RootSystem root_system_from_json(const Json& j);

Json object_to_json(const XObject& m);
/// Strict: unknown keys, bad shapes and operators outside the region are rejected.
XObject object_from_json(const Json& j);

Json form_to_json(const XObject& m, const GradedForm& b);
/// Ring and root system must match those of m.
GradedForm form_from_json(const Json& j, const XObject& m);

Json report_to_json(const Report& rep, const std::string& subject);
Report report_from_json(const Json& j);

/// kind is "character", "weyl-multiplicities" or "weyl-character".
Json character_to_json(const Character& c, const std::string& kind);
Character character_from_json(const Json& j);
/// Header w1..wr,multiplicity; one row per weight.
std::string character_to_csv(const Character& c, std::size_t rank);

Json hom_to_json(const HomMap& f, const XObject& m, const XObject& n, bool isomorphism);
HomMap hom_from_json(const Json& j, const GroundRing& ring);

}  // namespace xtilt::io
