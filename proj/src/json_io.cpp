#include "cptk/json_io.hpp"

#include <fstream>
#include <sstream>

#include "cptk/error.hpp"

namespace cptk {

namespace {

[[noreturn]] void malformed(const std::string& what, const json& at) {
    throw ParseError(what + " in " + at.dump());
}

const json& field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing field \"") + key + "\"", doc);
    return doc.at(key);
}

std::string string_field(const json& doc, const char* key) {
    const json& v = field(doc, key);
    if (!v.is_string()) malformed(std::string("field \"") + key + "\" must be a string", doc);
    return v.get<std::string>();
}

} // namespace

json to_json(const Dfa& dfa) {
    json transitions = json::array();
    const std::size_t b = dfa.alphabet().size();
    for (std::size_t q = 0; q < dfa.state_count(); ++q) {
        json row = json::array();
        for (std::size_t r = 0; r < b; ++r) row.push_back(dfa.next(static_cast<Dfa::State>(q), r));
        transitions.push_back(std::move(row));
    }
    json accepting = json::array();
    for (std::size_t q = 0; q < dfa.state_count(); ++q)
        if (dfa.accepting(static_cast<Dfa::State>(q))) accepting.push_back(q);
    return json{{"alphabet", dfa.alphabet().symbols()},
                {"states", dfa.state_count()},
                {"initial", dfa.initial()},
                {"accepting", std::move(accepting)},
                {"transitions", std::move(transitions)}};
}

Dfa dfa_from_json(const json& doc, const Alphabet* fallback) {
    if (!doc.is_object()) malformed("automaton must be an object", doc);
    Alphabet alphabet;
    if (doc.contains("alphabet"))
        alphabet = Alphabet(string_field(doc, "alphabet"));
    else if (fallback)
        alphabet = *fallback;
    else
        malformed("automaton without alphabet", doc);
    try {
        const json& rows = field(doc, "transitions");
        if (!rows.is_array()) malformed("\"transitions\" must be an array", doc);
        std::size_t n = doc.contains("states") ? doc.at("states").get<std::size_t>() : rows.size();
        if (rows.size() != n) malformed("\"transitions\" has " + std::to_string(rows.size()) + " rows for " +
                                            std::to_string(n) + " states",
                                        doc);
        std::vector<Dfa::State> delta;
        for (const json& row : rows) {
            if (!row.is_array() || row.size() != alphabet.size())
                malformed("transition row must list one target per symbol", row);
            for (const json& t : row) delta.push_back(t.get<Dfa::State>());
        }
        std::vector<bool> accepting(n, false);
        for (const json& q : field(doc, "accepting")) {
            auto s = q.get<std::size_t>();
            if (s >= n) malformed("accepting state out of range", doc);
            accepting[s] = true;
        }
        auto initial = doc.contains("initial") ? doc.at("initial").get<Dfa::State>() : 0;
        return Dfa(alphabet, initial, std::move(delta), std::move(accepting));
    } catch (const json::exception& e) {
        malformed(std::string("bad automaton (") + e.what() + ")", doc);
    } catch (const PreconditionError& e) {
        malformed(std::string("bad automaton (") + e.what() + ")", doc);
    }
}

json to_json(const LangExpr& e) {
    using Kind = LangExpr::Kind;
    switch (e.kind()) {
    case Kind::Finite: return json{{"finite", e.words()}};
    case Kind::Automaton: return json{{"dfa", to_json(e.dfa())}};
    case Kind::Predicate: return json{{"predicate", e.name()}};
    case Kind::Union:
    case Kind::Intersect: {
        json args = json::array();
        for (const LangExpr& c : e.children()) args.push_back(to_json(c));
        return json{{"op", e.kind() == Kind::Union ? "union" : "intersect"}, {"args", std::move(args)}};
    }
    case Kind::Complement: return json{{"op", "complement"}, {"arg", to_json(e.child())}};
    case Kind::LeftMark:
        return json{{"op", "leftmark"}, {"symbol", std::string(1, e.marker())}, {"arg", to_json(e.child())}};
    case Kind::LeftQuotient: return json{{"op", "leftquotient"}, {"word", e.prefix()}, {"arg", to_json(e.child())}};
    }
    return json();
}

LangExpr lang_from_json(const json& doc, const Alphabet* fallback) {
    if (!doc.is_object()) malformed("language expression must be an object", doc);
    if (doc.contains("finite")) {
        const json& words = doc.at("finite");
        if (!words.is_array()) malformed("\"finite\" must be an array of strings", doc);
        std::vector<Word> list;
        for (const json& w : words) {
            if (!w.is_string()) malformed("\"finite\" must be an array of strings", doc);
            list.push_back(w.get<std::string>());
        }
        return LangExpr::finite(std::move(list));
    }
    if (doc.contains("dfa")) return LangExpr::automaton(dfa_from_json(doc.at("dfa"), fallback));
    if (doc.contains("predicate")) return LangExpr::predicate(string_field(doc, "predicate"));
    std::string op = string_field(doc, "op");
    if (op == "union" || op == "intersect") {
        const json& args = field(doc, "args");
        if (!args.is_array() || args.empty()) malformed("\"args\" must be a nonempty array", doc);
        std::vector<LangExpr> parts;
        for (const json& a : args) parts.push_back(lang_from_json(a, fallback));
        return op == "union" ? LangExpr::unite(std::move(parts)) : LangExpr::intersect(std::move(parts));
    }
    if (op == "complement") return LangExpr::complement(lang_from_json(field(doc, "arg"), fallback));
    if (op == "leftmark") {
        std::string x = string_field(doc, "symbol");
        if (x.size() != 1) malformed("\"symbol\" must be a single character", doc);
        return LangExpr::left_mark(x.front(), lang_from_json(field(doc, "arg"), fallback));
    }
    if (op == "leftquotient")
        return LangExpr::left_quotient(string_field(doc, "word"), lang_from_json(field(doc, "arg"), fallback));
    malformed("unknown op \"" + op + "\"", doc);
}

json parse_document(std::string_view text, std::string_view source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                             e.what(),
                         line, column);
    }
}

json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_document(text.str(), path);
}

} // namespace cptk
