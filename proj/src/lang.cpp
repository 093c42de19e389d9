#include "cptk/lang.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "cptk/error.hpp"

namespace cptk {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Certified: return "certified";
    case Outcome::Refuted: return "refuted";
    case Outcome::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Finiteness f) {
    switch (f) {
    case Finiteness::Finite: return "finite";
    case Finiteness::Infinite: return "infinite";
    case Finiteness::UnknownUpTo: return "unknown-up-to";
    }
    return "?";
}

struct LangExpr::Node {
    Kind kind;
    std::vector<Word> words;
    std::optional<Dfa> dfa;
    std::string text; // predicate name, marker symbol or quotient word
    std::vector<LangExpr> children;
    bool regular = true;

    mutable std::mutex mu;
    mutable std::vector<std::pair<std::string, std::shared_ptr<const Dfa>>> automata;
    mutable std::vector<std::pair<std::string, std::shared_ptr<const Approximation>>> approximations;

    explicit Node(Kind k) : kind(k) {}
};

struct LangAccess {
    static const LangExpr::Node& node(const LangExpr& e) { return *e.node_; }
    static LangExpr make(std::shared_ptr<LangExpr::Node> n) {
        n->regular = std::all_of(n->children.begin(), n->children.end(),
                                 [](const LangExpr& c) { return c.regular(); }) &&
                     n->kind != LangExpr::Kind::Predicate;
        return LangExpr(std::move(n));
    }
};

namespace {

using Node = LangExpr::Node;
using Kind = LangExpr::Kind;

bool shortlex_bytes(const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_square(std::size_t n) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

constexpr std::string_view kEqualCounts = "equal-counts-";

} // namespace

bool known_predicate(std::string_view name) {
    if (name == "square-length" || name == "prime-length") return true;
    return name.size() == kEqualCounts.size() + 2 && name.substr(0, kEqualCounts.size()) == kEqualCounts &&
           name[kEqualCounts.size()] != name[kEqualCounts.size() + 1];
}

bool predicate_holds(std::string_view name, std::string_view w) {
    if (name == "square-length") return is_square(w.size());
    if (name == "prime-length") return is_prime(w.size());
    if (known_predicate(name)) {
        char x = name[kEqualCounts.size()], y = name[kEqualCounts.size() + 1];
        return std::count(w.begin(), w.end(), x) == std::count(w.begin(), w.end(), y);
    }
    throw UnknownPredicate("unknown predicate \"" + std::string(name) + "\"");
}

LangExpr::LangExpr() : node_(finite({}).node_) {}

LangExpr LangExpr::finite(std::vector<Word> words) {
    auto n = std::make_shared<Node>(Kind::Finite);
    std::sort(words.begin(), words.end(), shortlex_bytes);
    words.erase(std::unique(words.begin(), words.end()), words.end());
    n->words = std::move(words);
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::automaton(Dfa dfa) {
    auto n = std::make_shared<Node>(Kind::Automaton);
    n->dfa = std::move(dfa);
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::predicate(std::string name) {
    if (!known_predicate(name)) throw UnknownPredicate("unknown predicate \"" + name + "\"");
    auto n = std::make_shared<Node>(Kind::Predicate);
    n->text = std::move(name);
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::unite(std::vector<LangExpr> parts) {
    if (parts.empty()) return empty();
    if (parts.size() == 1) return parts.front();
    auto n = std::make_shared<Node>(Kind::Union);
    n->children = std::move(parts);
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::intersect(std::vector<LangExpr> parts) {
    if (parts.empty()) return universe();
    if (parts.size() == 1) return parts.front();
    auto n = std::make_shared<Node>(Kind::Intersect);
    n->children = std::move(parts);
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::complement(LangExpr inner) {
    auto n = std::make_shared<Node>(Kind::Complement);
    n->children.push_back(std::move(inner));
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::left_mark(char x, LangExpr inner) {
    auto n = std::make_shared<Node>(Kind::LeftMark);
    n->text = std::string(1, x);
    n->children.push_back(std::move(inner));
    return LangAccess::make(std::move(n));
}

LangExpr LangExpr::left_quotient(Word u, LangExpr inner) {
    auto n = std::make_shared<Node>(Kind::LeftQuotient);
    n->text = std::move(u);
    n->children.push_back(std::move(inner));
    return LangAccess::make(std::move(n));
}

LangExpr::Kind LangExpr::kind() const noexcept { return node_->kind; }

const std::vector<Word>& LangExpr::words() const {
    if (node_->kind != Kind::Finite) throw PreconditionError("words() on a non-finite-set node");
    return node_->words;
}

const Dfa& LangExpr::dfa() const {
    if (node_->kind != Kind::Automaton) throw PreconditionError("dfa() on a non-automaton node");
    return *node_->dfa;
}

const std::string& LangExpr::name() const {
    if (node_->kind != Kind::Predicate) throw PreconditionError("name() on a non-predicate node");
    return node_->text;
}

char LangExpr::marker() const {
    if (node_->kind != Kind::LeftMark) throw PreconditionError("marker() on a non-leftmark node");
    return node_->text.front();
}

const Word& LangExpr::prefix() const {
    if (node_->kind != Kind::LeftQuotient) throw PreconditionError("prefix() on a non-quotient node");
    return node_->text;
}

const std::vector<LangExpr>& LangExpr::children() const { return node_->children; }

bool LangExpr::regular() const noexcept { return node_->regular; }

bool member(const LangExpr& lang, std::string_view w) {
    const Node& n = LangAccess::node(lang);
    switch (n.kind) {
    case Kind::Finite: {
        Word key(w);
        return std::binary_search(n.words.begin(), n.words.end(), key, shortlex_bytes);
    }
    case Kind::Automaton: return n.dfa->accepts(w);
    case Kind::Predicate: return predicate_holds(n.text, w);
    case Kind::Union:
        return std::any_of(n.children.begin(), n.children.end(), [w](const LangExpr& c) { return member(c, w); });
    case Kind::Intersect:
        return std::all_of(n.children.begin(), n.children.end(), [w](const LangExpr& c) { return member(c, w); });
    case Kind::Complement: return !member(n.children[0], w);
    case Kind::LeftMark: return !w.empty() && w.front() == n.text.front() && member(n.children[0], w.substr(1));
    case Kind::LeftQuotient: return member(n.children[0], n.text + std::string(w));
    }
    return false;
}

Dfa to_automaton(const LangExpr& lang, const Alphabet& alphabet) {
    const Node& n = LangAccess::node(lang);
    if (!n.regular) throw NonRegularLeaf("expression contains a predicate leaf: " + describe(lang));
    {
        std::lock_guard lock(n.mu);
        for (const auto& [key, dfa] : n.automata)
            if (key == alphabet.symbols()) return *dfa;
    }
    Dfa out;
    switch (n.kind) {
    case Kind::Finite:
        for (const Word& w : n.words) alphabet.require(w);
        out = Dfa::from_words(alphabet, n.words);
        break;
    case Kind::Automaton:
        if (!(n.dfa->alphabet() == alphabet))
            throw AlphabetError("automaton over \"" + n.dfa->alphabet().symbols() + "\" used with alphabet \"" +
                                alphabet.symbols() + "\"");
        out = n.dfa->canonical();
        break;
    case Kind::Predicate: break; // unreachable: regular() is false
    case Kind::Union:
    case Kind::Intersect: {
        out = to_automaton(n.children[0], alphabet);
        BoolOp op = n.kind == Kind::Union ? BoolOp::Or : BoolOp::And;
        for (std::size_t k = 1; k < n.children.size(); ++k) out = product(out, to_automaton(n.children[k], alphabet), op);
        break;
    }
    case Kind::Complement: out = to_automaton(n.children[0], alphabet).complement(); break;
    case Kind::LeftMark:
        alphabet.require(n.text);
        out = to_automaton(n.children[0], alphabet).left_mark(n.text.front());
        break;
    case Kind::LeftQuotient:
        alphabet.require(n.text);
        out = to_automaton(n.children[0], alphabet).left_quotient(n.text);
        break;
    }
    std::lock_guard lock(n.mu);
    n.automata.emplace_back(alphabet.symbols(), std::make_shared<const Dfa>(out));
    return out;
}

namespace {

/// Position of a subtree relative to the root word w: the subtree is asked
/// about prepend·(strip⁻¹w); dead subtrees are never consulted.
struct Shift {
    Word strip, prepend;
    bool dead = false;

    Shift mark(char x) const {
        Shift s = *this;
        if (s.dead) return s;
        if (!s.prepend.empty()) {
            if (s.prepend.front() == x)
                s.prepend.erase(0, 1);
            else
                s.dead = true;
        } else {
            s.strip.push_back(x);
        }
        return s;
    }
    Shift quotient(const Word& u) const {
        Shift s = *this;
        if (!s.dead) s.prepend = u + s.prepend;
        return s;
    }
};

using Key = std::tuple<std::string, Word, Word>;

void collect_keys(const LangExpr& e, const Shift& at, std::map<Key, std::size_t>& keys) {
    if (e.regular()) return;
    switch (e.kind()) {
    case Kind::Predicate:
        if (!at.dead) keys.emplace(Key{e.name(), at.strip, at.prepend}, keys.size());
        return;
    case Kind::LeftMark: collect_keys(e.child(), at.mark(e.marker()), keys); return;
    case Kind::LeftQuotient: collect_keys(e.child(), at.quotient(e.prefix()), keys); return;
    default:
        for (const LangExpr& c : e.children()) collect_keys(c, at, keys);
    }
}

/// P ∩ X^{≤N}, plus every longer word when `long_words` is set.
LangExpr short_part(const std::string& name, const Alphabet& alphabet, bool long_words) {
    std::vector<Word> hits, all;
    Word w;
    for (std::uint64_t r = 0, n = alphabet.words_shorter_than(kApproximationExactLength + 1); r < n;
         ++r, w = alphabet.succ(w)) {
        all.push_back(w);
        if (predicate_holds(name, w)) hits.push_back(w);
    }
    LangExpr out = LangExpr::finite(std::move(hits));
    return long_words ? out | ~LangExpr::finite(std::move(all)) : out;
}

LangExpr substitute(const LangExpr& e, const Shift& at, const std::map<Key, std::size_t>& keys, std::uint64_t bits,
                    const Alphabet& alphabet) {
    if (e.regular()) return e;
    switch (e.kind()) {
    case Kind::Predicate: {
        if (at.dead) return LangExpr::empty();
        std::size_t k = keys.at(Key{e.name(), at.strip, at.prepend});
        return short_part(e.name(), alphabet, ((bits >> k) & 1) != 0);
    }
    case Kind::LeftMark: return LangExpr::left_mark(e.marker(), substitute(e.child(), at.mark(e.marker()), keys, bits, alphabet));
    case Kind::LeftQuotient:
        return LangExpr::left_quotient(e.prefix(), substitute(e.child(), at.quotient(e.prefix()), keys, bits, alphabet));
    case Kind::Complement: return LangExpr::complement(substitute(e.child(), at, keys, bits, alphabet));
    case Kind::Union:
    case Kind::Intersect: {
        std::vector<LangExpr> parts;
        for (const LangExpr& c : e.children()) parts.push_back(substitute(c, at, keys, bits, alphabet));
        return e.kind() == Kind::Union ? LangExpr::unite(std::move(parts)) : LangExpr::intersect(std::move(parts));
    }
    default: return e;
    }
}

/// Walks lex(0..horizon) and returns the first word satisfying `pred`.
template <typename Pred>
std::optional<std::pair<std::uint64_t, Word>> scan(const Alphabet& alphabet, std::uint64_t from, std::uint64_t to,
                                                   Pred pred) {
    if (from > to) return std::nullopt;
    Word w = alphabet.lex(from);
    for (std::uint64_t r = from;; ++r) {
        if (pred(w)) return std::make_pair(r, w);
        if (r == to) break;
        w = alphabet.succ(w);
    }
    return std::nullopt;
}

} // namespace

Approximation approximate(const LangExpr& lang, const Alphabet& alphabet) {
    const Node& n = LangAccess::node(lang);
    {
        std::lock_guard lock(n.mu);
        for (const auto& [key, approx] : n.approximations)
            if (key == alphabet.symbols()) return *approx;
    }
    Approximation out;
    if (lang.regular()) {
        out.lower = out.upper = to_automaton(lang, alphabet);
        out.exact = true;
    } else {
        std::map<Key, std::size_t> keys;
        collect_keys(lang, Shift{}, keys);
        out.keys = keys.size();
        if (keys.size() > kMaxApproximationKeys) {
            out.lower = Dfa::empty(alphabet);
            out.upper = Dfa::universal(alphabet);
            out.trivial = true;
        } else {
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << keys.size()); ++bits) {
                Dfa d = to_automaton(substitute(lang, Shift{}, keys, bits, alphabet), alphabet);
                if (bits == 0) {
                    out.lower = out.upper = d;
                } else {
                    out.lower = product(out.lower, d, BoolOp::And);
                    out.upper = product(out.upper, d, BoolOp::Or);
                }
            }
            out.exact = out.lower == out.upper;
        }
    }
    std::lock_guard lock(n.mu);
    n.approximations.emplace_back(alphabet.symbols(), std::make_shared<const Approximation>(out));
    return out;
}

boost::dynamic_bitset<> fingerprint(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon) {
    boost::dynamic_bitset<> bits(horizon + 1);
    std::optional<Dfa> dfa;
    if (lang.regular()) dfa = to_automaton(lang, alphabet);
    Word w;
    for (std::uint64_t r = 0; r <= horizon; ++r) {
        bits[r] = dfa ? dfa->accepts(w) : member(lang, w);
        if (r < horizon) w = alphabet.succ(w);
    }
    return bits;
}

Verdict emptiness(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon) {
    Approximation a = approximate(lang, alphabet);
    if (a.upper.is_empty()) return Verdict::certify();
    if (a.exact) return Verdict::refute(*a.upper.least_word());
    // Words outside the upper bound are skipped; a lower-bound member caps the scan.
    std::uint64_t to = horizon;
    std::optional<Word> sure = a.lower.least_word();
    if (sure) to = std::min(to, alphabet.ord(*sure));
    auto hit = scan(alphabet, 0, to, [&](const Word& w) { return a.upper.accepts(w) && member(lang, w); });
    if (hit) return Verdict::refute(hit->second);
    if (sure) return Verdict::refute(*sure);
    return Verdict::unknown(horizon);
}

FinitenessVerdict is_finite(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon) {
    FinitenessVerdict v;
    Approximation a = approximate(lang, alphabet);
    auto upper = a.upper.finiteness();
    if (upper.finite) {
        v.kind = Finiteness::Finite;
        if (a.exact) {
            v.count = upper.count;
        } else {
            for (const Word& w : a.upper.words())
                if (member(lang, w)) ++v.count;
        }
        return v;
    }
    auto lower = a.exact ? upper : a.lower.finiteness();
    if (!lower.finite) {
        v.kind = Finiteness::Infinite;
        v.prefix = lower.prefix;
        v.cycle = lower.cycle;
        v.suffix = lower.suffix;
        return v;
    }
    v.kind = Finiteness::UnknownUpTo;
    v.horizon = horizon;
    scan(alphabet, 0, horizon, [&](const Word& w) {
        if (a.upper.accepts(w) && member(lang, w)) ++v.count;
        return false;
    });
    return v;
}

Verdict subset_of(const LangExpr& l1, const LangExpr& l2, const Alphabet& alphabet, std::uint64_t horizon) {
    return emptiness(l1 & ~l2, alphabet, horizon);
}

Verdict equal(const LangExpr& l1, const LangExpr& l2, const Alphabet& alphabet, std::uint64_t horizon) {
    return emptiness((l1 & ~l2) | (l2 & ~l1), alphabet, horizon);
}

std::string describe(const LangExpr& e) {
    switch (e.kind()) {
    case Kind::Finite: {
        if (e.words().empty()) return "∅";
        std::string s = "{";
        for (std::size_t k = 0; k < e.words().size(); ++k) s += (k ? "," : "") + show(e.words()[k]);
        return s + "}";
    }
    case Kind::Automaton: return "DFA[" + std::to_string(e.dfa().state_count()) + "]";
    case Kind::Predicate: return e.name();
    case Kind::Union:
    case Kind::Intersect: {
        std::string s = "(";
        for (std::size_t k = 0; k < e.children().size(); ++k)
            s += (k ? (e.kind() == Kind::Union ? " ∪ " : " ∩ ") : "") + describe(e.children()[k]);
        return s + ")";
    }
    case Kind::Complement:
        if (e.child().kind() == Kind::Finite && e.child().words().empty()) return "X*";
        return "(" + describe(e.child()) + ")ᶜ";
    case Kind::LeftMark: return std::string(1, e.marker()) + "·" + describe(e.child());
    case Kind::LeftQuotient: return show(e.prefix()) + "⁻¹" + describe(e.child());
    }
    return "?";
}

} // namespace cptk
