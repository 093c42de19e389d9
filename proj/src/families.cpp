#include "cptk/families.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <unordered_map>

#include "cptk/error.hpp"
#include "cptk/parallel.hpp"

namespace cptk {

struct FamilyEnum::Cache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, LangExpr> members;
};

namespace {

constexpr std::size_t kCacheLimit = std::size_t{1} << 20;

BigCode power(const BigCode& base, std::size_t exp) {
    BigCode r = 1;
    for (std::size_t k = 0; k < exp; ++k) r *= base;
    return r;
}

/// Number of automata with n states.
BigCode block_size(std::size_t b, std::size_t n) {
    return power(BigCode(n), b * n) * power(BigCode(2), n);
}

FamilyFlags regular_flags() {
    return {true, true, true, true};
}

/// Closures under u and s contain each e(k) as the one-element tuple [k].
FamilyEnum::Locator singleton_locator(const FamilyEnum& f) {
    if (!f.can_locate()) return {};
    return [f](const Dfa& d) -> std::optional<BigCode> {
        if (auto k = f.locate(d)) return big_tuple(std::vector<BigCode>{*k});
        return std::nullopt;
    };
}

} // namespace

FamilyEnum::FamilyEnum(std::string name, Alphabet alphabet, Generator generator, bool exact, FamilyFlags flags,
                       Locator locator)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), generator_(std::move(generator)), exact_(exact),
      flags_(flags), locator_(std::move(locator)), cache_(std::make_shared<Cache>()) {}

std::optional<BigCode> FamilyEnum::locate(const Dfa& dfa) const {
    if (!locator_ || !(dfa.alphabet() == alphabet_)) return std::nullopt;
    return locator_(dfa.canonical());
}

LangExpr FamilyEnum::operator()(std::uint64_t i) const {
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->members.find(i);
        if (it != cache_->members.end()) return it->second;
    }
    LangExpr e = generator_(BigCode(i));
    std::lock_guard lock(cache_->mu);
    if (cache_->members.size() < kCacheLimit) return cache_->members.emplace(i, e).first->second;
    return e;
}

LangExpr FamilyEnum::operator()(const BigCode& i) const {
    if (i < 0) throw PreconditionError("family indices are naturals");
    if (i <= std::numeric_limits<std::uint64_t>::max()) return (*this)(static_cast<std::uint64_t>(i));
    return generator_(i);
}

bool word_e(const FamilyEnum& family, const BigCode& i, std::uint64_t j) {
    return member(family(i), family.alphabet().lex(j));
}

Dfa regular_automaton(const Alphabet& alphabet, const BigCode& index) {
    if (index < 0) throw PreconditionError("family indices are naturals");
    const std::size_t b = alphabet.size();
    BigCode r = index;
    std::size_t n = 1;
    for (BigCode size; r >= (size = block_size(b, n)); ++n) r -= size;
    BigCode states = power(BigCode(2), n);
    auto mask = static_cast<std::uint64_t>(r % states);
    BigCode table = r / states;
    std::vector<Dfa::State> delta(n * b);
    for (std::size_t k = delta.size(); k-- > 0;) {
        delta[k] = static_cast<Dfa::State>(table % n);
        table /= n;
    }
    std::vector<bool> accepting(n);
    for (std::size_t q = 0; q < n; ++q) accepting[q] = !((mask >> q) & 1);
    return Dfa(alphabet, 0, std::move(delta), std::move(accepting));
}

BigCode regular_index(const Dfa& dfa) {
    // Breadth-first numbering assigns each newly met state the least unused
    // number, which makes the canonical table the lexicographically least
    // one among the renumberings with the initial state at 0.
    Dfa c = dfa.canonical();
    const std::size_t b = c.alphabet().size(), n = c.state_count();
    BigCode offset = 0;
    for (std::size_t m = 1; m < n; ++m) offset += block_size(b, m);
    BigCode table = 0;
    for (Dfa::State t : c.table()) table = table * n + t;
    BigCode mask = 0;
    for (std::size_t q = n; q-- > 0;) mask = mask * 2 + (c.accepting(static_cast<Dfa::State>(q)) ? 0 : 1);
    return offset + table * power(BigCode(2), n) + mask;
}

FamilyEnum regular_family(const Alphabet& alphabet) {
    return FamilyEnum(
        "regular", alphabet,
        [alphabet](const BigCode& i) { return LangExpr::automaton(regular_automaton(alphabet, i)); }, true,
        regular_flags(), [](const Dfa& d) { return std::optional<BigCode>(regular_index(d)); });
}

FamilyEnum finite_family(const Alphabet& alphabet) {
    return FamilyEnum(
        "finite", alphabet,
        [alphabet](const BigCode& i) {
            std::vector<Word> words;
            if (i > 0) {
                std::size_t top = boost::multiprecision::msb(i);
                for (std::size_t k = 0; k <= top; ++k)
                    if (boost::multiprecision::bit_test(i, k)) words.push_back(alphabet.lex(k));
            }
            return LangExpr::finite(std::move(words));
        },
        true, FamilyFlags{true, true, false, false}, [alphabet](const Dfa& d) -> std::optional<BigCode> {
            if (!d.finiteness().finite) return std::nullopt;
            BigCode i = 0;
            for (const Word& w : d.words()) boost::multiprecision::bit_set(i, alphabet.ord(w));
            return i;
        });
}

FamilyEnum length_family(const Alphabet& alphabet) {
    return FamilyEnum(
        "length", alphabet,
        [alphabet](const BigCode& i) { return LangExpr::automaton(Dfa::length_exactly(alphabet, to_u64(i))); },
        true, FamilyFlags{}, [alphabet](const Dfa& d) -> std::optional<BigCode> {
            auto least = d.least_word();
            if (!least || d != Dfa::length_exactly(alphabet, least->size()).canonical()) return std::nullopt;
            return BigCode(least->size());
        });
}

FamilyEnum list_family(const Alphabet& alphabet, std::vector<LangExpr> members, FamilyFlags flags,
                       std::string name) {
    if (members.empty()) throw PreconditionError("a list family needs at least one member");
    bool exact = std::all_of(members.begin(), members.end(), [](const LangExpr& e) { return e.regular(); });
    auto shared = std::make_shared<const std::vector<LangExpr>>(std::move(members));
    FamilyEnum::Locator locate;
    if (exact)
        locate = [shared, alphabet](const Dfa& d) -> std::optional<BigCode> {
            for (std::size_t k = 0; k < shared->size(); ++k)
                if (to_automaton((*shared)[k], alphabet) == d) return BigCode(k);
            return std::nullopt;
        };
    return FamilyEnum(
        std::move(name), alphabet,
        [shared](const BigCode& i) { return (*shared)[static_cast<std::size_t>(i % shared->size())]; }, exact,
        flags, std::move(locate));
}

FamilyEnum close_u(const FamilyEnum& f) {
    FamilyFlags fl = f.flags();
    FamilyFlags out{true, fl.intersection_closed, fl.complement_closed && fl.intersection_closed, fl.nontrivial};
    return FamilyEnum(
        "u(" + f.name() + ")", f.alphabet(),
        [f](const BigCode& i) {
            std::vector<LangExpr> parts;
            for (const BigCode& k : big_untuple(i)) parts.push_back(f(k));
            return LangExpr::unite(std::move(parts));
        },
        f.exact(), out, singleton_locator(f));
}

FamilyEnum close_s(const FamilyEnum& f) {
    FamilyFlags fl = f.flags();
    FamilyFlags out{fl.union_closed, true, fl.complement_closed && fl.union_closed, fl.nontrivial};
    return FamilyEnum(
        "s(" + f.name() + ")", f.alphabet(),
        [f](const BigCode& i) {
            std::vector<LangExpr> parts;
            for (const BigCode& k : big_untuple(i)) parts.push_back(f(k));
            return LangExpr::intersect(std::move(parts));
        },
        f.exact(), out, singleton_locator(f));
}

FamilyEnum close_co(const FamilyEnum& f) {
    FamilyFlags fl = f.flags();
    FamilyFlags out{fl.intersection_closed, fl.union_closed, fl.complement_closed, fl.nontrivial};
    return FamilyEnum(
        "co(" + f.name() + ")", f.alphabet(), [f](const BigCode& i) { return LangExpr::complement(f(i)); },
        f.exact(), out, [f](const Dfa& d) { return f.locate(d.complement()); });
}

FamilyEnum close_cc(const FamilyEnum& f) {
    FamilyFlags fl = f.flags();
    bool boolean = fl.complement_closed;
    FamilyFlags out{boolean && fl.union_closed, boolean && fl.intersection_closed, true, fl.nontrivial};
    return FamilyEnum(
        "cc(" + f.name() + ")", f.alphabet(),
        [f](const BigCode& i) {
            LangExpr base = f(BigCode(i / 2));
            return i % 2 == 0 ? base : LangExpr::complement(base);
        },
        f.exact(), out, [f](const Dfa& d) -> std::optional<BigCode> {
            if (auto k = f.locate(d)) return 2 * *k;
            if (auto k = f.locate(d.complement())) return 2 * *k + 1;
            return std::nullopt;
        });
}

FamilyEnum close_b(const FamilyEnum& f) {
    FamilyEnum b = close_u(close_s(close_cc(f)));
    return FamilyEnum("b(" + f.name() + ")", f.alphabet(), [b](const BigCode& i) { return b(i); }, f.exact(),
                      FamilyFlags{true, true, true, f.flags().nontrivial}, [b](const Dfa& d) { return b.locate(d); });
}

FamilyEnum apply_closure(const FamilyEnum& f, const std::string& op) {
    if (op == "u") return close_u(f);
    if (op == "s") return close_s(f);
    if (op == "co") return close_co(f);
    if (op == "cc") return close_cc(f);
    if (op == "b") return close_b(f);
    throw ParseError("unknown closure \"" + op + "\" (expected u, s, co, cc or b)");
}

FamilyEnum family_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("family must be an object: " + doc.dump());
    try {
        Alphabet alphabet(doc.value("alphabet", std::string("ab")));
        std::optional<FamilyEnum> f;
        if (doc.contains("builtin")) {
            std::string which = doc.at("builtin").get<std::string>();
            if (which == "regular") f = regular_family(alphabet);
            else if (which == "finite") f = finite_family(alphabet);
            else if (which == "length") f = length_family(alphabet);
            else throw ParseError("unknown builtin family \"" + which + "\"");
        } else if (doc.contains("list")) {
            std::vector<LangExpr> members;
            for (const json& m : doc.at("list")) members.push_back(lang_from_json(m, &alphabet));
            FamilyFlags flags;
            if (doc.contains("flags")) {
                const json& fl = doc.at("flags");
                flags.union_closed = fl.value("union_closed", false);
                flags.intersection_closed = fl.value("intersection_closed", false);
                flags.complement_closed = fl.value("complement_closed", false);
                flags.nontrivial = fl.value("nontrivial", false);
            }
            f = list_family(alphabet, std::move(members), flags, doc.value("name", std::string("list")));
        } else {
            throw ParseError("family needs \"builtin\" or \"list\": " + doc.dump());
        }
        if (doc.contains("closure"))
            for (const json& op : doc.at("closure")) f = apply_closure(*f, op.get<std::string>());
        return *f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad family (") + e.what() + ")");
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("bad family (") + e.what() + ")");
    }
}

std::size_t BitsHash::operator()(const boost::dynamic_bitset<>& bits) const noexcept {
    std::size_t h = bits.size();
    std::vector<boost::dynamic_bitset<>::block_type> blocks(bits.num_blocks());
    boost::to_block_range(bits, blocks.begin());
    for (auto b : blocks) h = h * 1000003u ^ std::hash<boost::dynamic_bitset<>::block_type>()(b);
    return h;
}

Catalog::Catalog(const FamilyEnum& family, std::uint64_t index_bound, std::uint64_t horizon)
    : family_(family), index_bound_(index_bound), horizon_(horizon), class_of_(index_bound) {
    const Alphabet& x = family.alphabet();
    std::vector<LangExpr> members(index_bound);
    std::vector<std::optional<Dfa>> dfas(index_bound);
    parallel_for(index_bound, [&](std::size_t i) {
        members[i] = family(std::uint64_t{i});
        if (members[i].regular()) dfas[i] = to_automaton(members[i], x);
    });
    std::unordered_map<const void*, std::size_t> by_identity;
    for (std::uint64_t i = 0; i < index_bound; ++i) {
        std::size_t c;
        if (dfas[i]) {
            auto [it, fresh] = by_dfa_.try_emplace(*dfas[i], classes_.size());
            c = it->second;
            if (fresh) classes_.push_back(Class{i, {}, members[i], dfas[i], {}});
        } else {
            auto [it, fresh] = by_identity.try_emplace(members[i].identity(), classes_.size());
            c = it->second;
            if (fresh) classes_.push_back(Class{i, {}, members[i], std::nullopt, {}});
        }
        classes_[c].members.push_back(i);
        class_of_[i] = c;
    }
    parallel_for(classes_.size(), [&](std::size_t c) {
        Class& k = classes_[c];
        if (k.dfa) {
            k.bits.resize(horizon + 1);
            Word w;
            for (std::uint64_t r = 0; r <= horizon; ++r, w = x.succ(w)) k.bits[r] = k.dfa->accepts(w);
        } else {
            k.bits = fingerprint(k.lang, x, horizon);
        }
    });
    for (std::size_t c = 0; c < classes_.size(); ++c) by_bits_[classes_[c].bits].push_back(c);
}

std::optional<std::size_t> Catalog::find(const Dfa& canonical) const {
    auto it = by_dfa_.find(canonical);
    if (it == by_dfa_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> Catalog::find_bits(const boost::dynamic_bitset<>& bits) const {
    auto it = by_bits_.find(bits);
    return it == by_bits_.end() ? std::vector<std::size_t>{} : it->second;
}

std::string to_string(Status s) {
    return s == Status::Exact ? "exact" : "checked-to-horizon";
}

std::vector<DcClassPair> dc_classes(const Catalog& catalog) {
    const auto& classes = catalog.classes();
    const Alphabet& x = catalog.family().alphabet();
    std::vector<std::vector<DcClassPair>> found(classes.size());
    parallel_for(classes.size(), [&](std::size_t c) {
        const auto& k = classes[c];
        if (k.dfa) {
            if (auto d = catalog.find(k.dfa->complement().canonical()))
                found[c].push_back({c, *d, Status::Exact, 0});
        }
        for (std::size_t d : catalog.find_bits(~k.bits)) {
            if (k.dfa && classes[d].dfa) continue;  // decided above
            Verdict v = equal(k.lang, LangExpr::complement(classes[d].lang), x, catalog.horizon());
            if (v.certified()) found[c].push_back({c, d, Status::Exact, 0});
            else if (v.unknown()) found[c].push_back({c, d, Status::CheckedToHorizon, catalog.horizon()});
        }
    });
    std::vector<DcClassPair> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    auto code = [&](const DcClassPair& p) { return cantor_pair(classes[p.c].index, classes[p.d].index); };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return code(a) < code(b); });
    return out;
}

std::vector<DcMember> dc_members(const Catalog& catalog) {
    std::vector<DcMember> out;
    for (const DcClassPair& p : dc_classes(catalog))
        for (std::uint64_t i : catalog.classes()[p.c].members)
            for (std::uint64_t j : catalog.classes()[p.d].members) out.push_back({i, j, p.status, p.horizon});
    std::sort(out.begin(), out.end(),
              [](const DcMember& a, const DcMember& b) { return cantor_pair(a.i, a.j) < cantor_pair(b.i, b.j); });
    return out;
}

std::vector<DcMember> dc_members(const FamilyEnum& family, std::uint64_t index_bound, std::uint64_t horizon) {
    return dc_members(Catalog(family, index_bound, horizon));
}

} // namespace cptk
