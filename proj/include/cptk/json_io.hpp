#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "cptk/dfa.hpp"
#include "cptk/lang.hpp"

namespace cptk {

using json = nlohmann::json;

/// {"alphabet":"ab","states":n,"initial":0,"accepting":[...],"transitions":[[...],...]}
json to_json(const Dfa& dfa);
/// `fallback` supplies the alphabet when the document omits it.
Dfa dfa_from_json(const json& doc, const Alphabet* fallback = nullptr);

/// Atoms: {"finite":[...]}, {"dfa":{...}}, {"predicate":"name"}.
/// Nodes: {"op":"union"|"intersect","args":[...]}, {"op":"complement","arg":E},
/// {"op":"leftmark","symbol":"x","arg":E}, {"op":"leftquotient","word":"u","arg":E}.
json to_json(const LangExpr& lang);
LangExpr lang_from_json(const json& doc, const Alphabet* fallback = nullptr);

/// Parses text, mapping syntax errors to ParseError with line and column.
json parse_document(std::string_view text, std::string_view source = "<input>");
json read_document(const std::string& path);

} // namespace cptk
