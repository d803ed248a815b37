// serialize.hpp
// JSON forms of presentations, class sets and records. Integers that do not
// fit in 64 bits are written as decimal strings; the parsers accept either.

#pragma once

#include <string>

#include <json.hpp>

#include "cork/fourmanifold.hpp"
#include "cork/handlebody.hpp"
#include "cork/knots.hpp"
#include "cork/swalgebra.hpp"

namespace cork {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json to_json(const HandlePresentation& pres);
HandlePresentation presentation_from_json(const Json& j);

Json to_json(const HomologyReport& h);
Json to_json(const FormInvariants& f);

Json to_json(const BasicClassSet& set);
BasicClassSet class_set_from_json(const Json& j);

Json to_json(const EmbeddingProfile& profile);
Json to_json(const EmbeddedPiece& piece);
Json to_json(const ClosedRecord& rec);

// Seifert matrix file: either a bare array of rows or {"seifert": [...]}.
SeifertMatrix seifert_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace cork
