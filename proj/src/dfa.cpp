#include "cptk/dfa.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "cptk/error.hpp"

namespace cptk {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

} // namespace

Dfa::Dfa(Alphabet alphabet, State initial, std::vector<State> delta, std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)), initial_(initial), delta_(std::move(delta)), accepting_(std::move(accepting)) {
    const std::size_t n = accepting_.size();
    if (n == 0) throw PreconditionError("automaton needs at least one state");
    if (initial_ >= n) throw PreconditionError("initial state out of range");
    if (delta_.size() != n * alphabet_.size())
        throw PreconditionError("transition table has " + std::to_string(delta_.size()) + " entries, expected " +
                                std::to_string(n * alphabet_.size()));
    for (State t : delta_)
        if (t >= n) throw PreconditionError("transition target " + std::to_string(t) + " out of range");
}

Dfa Dfa::empty(const Alphabet& alphabet) {
    Dfa d(alphabet, 0, std::vector<State>(alphabet.size(), 0), {false});
    d.canonical_ = true;
    return d;
}

Dfa Dfa::universal(const Alphabet& alphabet) {
    Dfa d(alphabet, 0, std::vector<State>(alphabet.size(), 0), {true});
    d.canonical_ = true;
    return d;
}

Dfa Dfa::from_words(const Alphabet& alphabet, const std::vector<Word>& words) {
    const std::size_t b = alphabet.size();
    // state 0 is the sink, state 1 the root
    std::vector<State> delta(2 * b, 0);
    std::vector<bool> accepting{false, false};
    for (const Word& w : words) {
        State q = 1;
        for (char x : w) {
            std::size_t r = alphabet.rank(x);
            if (delta[q * b + r] == 0) {
                delta[q * b + r] = static_cast<State>(accepting.size());
                accepting.push_back(false);
                delta.resize(delta.size() + b, 0);
            }
            q = delta[q * b + r];
        }
        accepting[q] = true;
    }
    return Dfa(alphabet, 1, std::move(delta), std::move(accepting)).canonical();
}

Dfa Dfa::length_exactly(const Alphabet& alphabet, std::size_t n) {
    const std::size_t b = alphabet.size();
    // states 0..n count symbols read, n+1 is the overflow sink
    std::vector<State> delta((n + 2) * b);
    std::vector<bool> accepting(n + 2, false);
    for (std::size_t q = 0; q <= n + 1; ++q)
        for (std::size_t r = 0; r < b; ++r) delta[q * b + r] = static_cast<State>(std::min(q + 1, n + 1));
    accepting[n] = true;
    // already minimal and numbered breadth-first
    Dfa d(alphabet, 0, std::move(delta), std::move(accepting));
    d.canonical_ = true;
    return d;
}

Dfa::State Dfa::run(State from, std::string_view w) const {
    State q = from;
    for (char x : w) q = next(q, alphabet_.rank(x));
    return q;
}

Dfa Dfa::complement() const {
    Dfa d = *this;
    d.accepting_.flip();
    return d;
}

Dfa Dfa::left_mark(char x) const {
    const std::size_t b = alphabet_.size(), n = state_count();
    const std::size_t marked = alphabet_.rank(x);
    const auto start = static_cast<State>(n), sink = static_cast<State>(n + 1);
    std::vector<State> delta = delta_;
    delta.resize((n + 2) * b, sink);
    delta[start * b + marked] = initial_;
    std::vector<bool> accepting = accepting_;
    accepting.push_back(false);
    accepting.push_back(false);
    return Dfa(alphabet_, start, std::move(delta), std::move(accepting)).canonical();
}

Dfa Dfa::left_quotient(std::string_view u) const {
    Dfa d = *this;
    d.initial_ = run(initial_, u);
    d.canonical_ = false;
    return d.canonical();
}

std::vector<bool> Dfa::reachable() const {
    std::vector<bool> seen(state_count(), false);
    std::vector<State> stack{initial_};
    seen[initial_] = true;
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (std::size_t r = 0; r < alphabet_.size(); ++r) {
            State t = next(q, r);
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<bool> Dfa::coreachable() const {
    const std::size_t n = state_count(), b = alphabet_.size();
    std::vector<std::vector<State>> preds(n);
    for (State q = 0; q < n; ++q)
        for (std::size_t r = 0; r < b; ++r) preds[next(q, r)].push_back(q);
    std::vector<bool> seen(n, false);
    std::vector<State> stack;
    for (State q = 0; q < n; ++q)
        if (accepting_[q]) {
            seen[q] = true;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (State p : preds[q])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

Dfa Dfa::canonical() const {
    if (canonical_) return *this;
    const std::size_t b = alphabet_.size();

    // reachable part in BFS order
    std::vector<State> order{initial_};
    std::vector<std::int64_t> id(state_count(), -1);
    id[initial_] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t r = 0; r < b; ++r) {
            State t = next(order[k], r);
            if (id[t] < 0) {
                id[t] = static_cast<std::int64_t>(order.size());
                order.push_back(t);
            }
        }
    const std::size_t n = order.size();

    // Moore refinement
    std::vector<State> cls(n);
    bool any_accept = false, any_reject = false;
    for (std::size_t k = 0; k < n; ++k) {
        cls[k] = accepting_[order[k]] ? 1 : 0;
        (cls[k] ? any_accept : any_reject) = true;
    }
    std::size_t classes = (any_accept && any_reject) ? 2 : 1;
    if (classes == 1) std::fill(cls.begin(), cls.end(), 0);
    for (;;) {
        std::map<std::vector<State>, State> signatures;
        std::vector<State> refined(n);
        std::vector<State> sig(b + 1);
        for (std::size_t k = 0; k < n; ++k) {
            sig[0] = cls[k];
            for (std::size_t r = 0; r < b; ++r) sig[r + 1] = cls[static_cast<std::size_t>(id[next(order[k], r)])];
            auto [it, fresh] = signatures.emplace(sig, static_cast<State>(signatures.size()));
            refined[k] = it->second;
        }
        cls.swap(refined);
        if (signatures.size() == classes) break;
        classes = signatures.size();
    }

    // quotient, renumbered breadth-first from the initial class
    std::vector<State> rep(classes, 0);
    std::vector<bool> have(classes, false);
    for (std::size_t k = 0; k < n; ++k)
        if (!have[cls[k]]) {
            have[cls[k]] = true;
            rep[cls[k]] = static_cast<State>(k);
        }
    std::vector<std::int64_t> fresh(classes, -1);
    std::vector<State> queue{cls[0]};
    fresh[cls[0]] = 0;
    std::vector<State> delta;
    std::vector<bool> accepting;
    for (std::size_t k = 0; k < queue.size(); ++k) {
        State c = queue[k];
        State q = order[rep[c]];
        accepting.push_back(accepting_[q]);
        for (std::size_t r = 0; r < b; ++r) {
            State tc = cls[static_cast<std::size_t>(id[next(q, r)])];
            if (fresh[tc] < 0) {
                fresh[tc] = static_cast<std::int64_t>(queue.size());
                queue.push_back(tc);
            }
            delta.push_back(static_cast<State>(fresh[tc]));
        }
    }
    Dfa d(alphabet_, 0, std::move(delta), std::move(accepting));
    d.canonical_ = true;
    return d;
}

bool Dfa::is_empty() const {
    auto seen = reachable();
    for (std::size_t q = 0; q < state_count(); ++q)
        if (seen[q] && accepting_[q]) return false;
    return true;
}

std::optional<Word> Dfa::least_word() const {
    // BFS discovery order is the length-lex order of the least word reaching each state.
    const std::size_t n = state_count(), b = alphabet_.size();
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::size_t> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<State> queue{initial_};
    seen[initial_] = true;
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        if (accepting_[q]) {
            Word w;
            for (State s = q; parent[s] >= 0; s = static_cast<State>(parent[s])) w.push_back(alphabet_.symbol(via[s]));
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t r = 0; r < b; ++r) {
            State t = next(q, r);
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = q;
                via[t] = r;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

namespace {

/// Shortest word from `from` into any state satisfying `goal`, restricted to `allowed` states.
template <typename Goal>
std::optional<Word> path_to(const Dfa& d, Dfa::State from, Goal goal, const std::vector<bool>& allowed) {
    const std::size_t n = d.state_count(), b = d.alphabet().size();
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::size_t> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<Dfa::State> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        Dfa::State q = queue.front();
        queue.pop_front();
        if (goal(q)) {
            Word w;
            for (Dfa::State s = q; parent[s] >= 0; s = static_cast<Dfa::State>(parent[s]))
                w.push_back(d.alphabet().symbol(via[s]));
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t r = 0; r < b; ++r) {
            Dfa::State t = d.next(q, r);
            if (!seen[t] && allowed[t]) {
                seen[t] = true;
                parent[t] = q;
                via[t] = r;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

} // namespace

Dfa::Finiteness Dfa::finiteness() const {
    const std::size_t n = state_count(), b = alphabet_.size();
    auto reach = reachable();
    auto coreach = coreachable();
    std::vector<bool> useful(n);
    for (std::size_t q = 0; q < n; ++q) useful[q] = reach[q] && coreach[q];

    Finiteness out;
    if (!useful[initial_]) return out;

    // iterative DFS over useful states; a back edge closes a pumpable cycle
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(n, White);
    std::vector<std::uint64_t> count(n, 0);
    struct Frame {
        State q;
        std::size_t r;
    };
    std::vector<Frame> stack{{initial_, 0}};
    colour[initial_] = Grey;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.r == b) {
            std::uint64_t c = accepting_[f.q] ? 1 : 0;
            for (std::size_t r = 0; r < b; ++r) {
                State t = next(f.q, r);
                if (useful[t]) c = add_sat(c, count[t]);
            }
            count[f.q] = c;
            colour[f.q] = Black;
            stack.pop_back();
            continue;
        }
        std::size_t r = f.r++;
        State t = next(f.q, r);
        if (!useful[t]) continue;
        if (colour[t] == Grey) {
            // cycle t -> ... -> f.q -> t along the stack
            Word cycle;
            std::size_t k = 0;
            while (stack[k].q != t) ++k;
            for (; k < stack.size(); ++k) cycle.push_back(alphabet_.symbol(stack[k].r - 1));
            out.finite = false;
            out.cycle = std::move(cycle);
            out.prefix = *path_to(*this, initial_, [t](State s) { return s == t; }, reach);
            out.suffix = *path_to(*this, t, [this](State s) { return accepting_[s]; }, reach);
            out.count = kSaturated;
            return out;
        }
        if (colour[t] == White) {
            colour[t] = Grey;
            stack.push_back({t, 0});
        }
    }
    out.count = count[initial_];
    return out;
}

std::vector<Word> Dfa::words() const {
    auto fin = finiteness();
    if (!fin.finite) throw PreconditionError("words() on an infinite language");
    auto coreach = coreachable();
    std::vector<Word> out;
    struct Item {
        State q;
        Word w;
    };
    std::vector<Item> stack;
    if (coreach[initial_]) stack.push_back({initial_, Word()});
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        if (accepting_[it.q]) out.push_back(it.w);
        for (std::size_t r = 0; r < alphabet_.size(); ++r) {
            State t = next(it.q, r);
            if (coreach[t]) stack.push_back({t, it.w + alphabet_.symbol(r)});
        }
    }
    std::sort(out.begin(), out.end(),
              [this](const Word& x, const Word& y) { return alphabet_.compare(x, y) < 0; });
    return out;
}

std::size_t Dfa::hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(alphabet_.symbols()) ^ (initial_ * 0x9e3779b97f4a7c15ULL);
    for (State t : delta_) h = h * 1099511628211ULL ^ t;
    for (bool a : accepting_) h = h * 31 + (a ? 7 : 3);
    return h;
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetError("product of automata over \"" + a.alphabet().symbols() + "\" and \"" +
                            b.alphabet().symbols() + "\"");
    const std::size_t k = a.alphabet().size(), nb = b.state_count();
    std::unordered_map<std::uint64_t, Dfa::State> ids;
    std::vector<std::pair<Dfa::State, Dfa::State>> states;
    auto intern = [&](Dfa::State p, Dfa::State q) {
        std::uint64_t key = static_cast<std::uint64_t>(p) * nb + q;
        auto [it, fresh] = ids.emplace(key, static_cast<Dfa::State>(states.size()));
        if (fresh) states.emplace_back(p, q);
        return it->second;
    };
    intern(a.initial(), b.initial());
    std::vector<Dfa::State> delta;
    std::vector<bool> accepting;
    for (std::size_t s = 0; s < states.size(); ++s) {
        auto [p, q] = states[s];
        bool x = a.accepting(p), y = b.accepting(q);
        switch (op) {
        case BoolOp::And: accepting.push_back(x && y); break;
        case BoolOp::Or: accepting.push_back(x || y); break;
        case BoolOp::Minus: accepting.push_back(x && !y); break;
        case BoolOp::Xor: accepting.push_back(x != y); break;
        }
        for (std::size_t r = 0; r < k; ++r) delta.push_back(intern(a.next(p, r), b.next(q, r)));
    }
    return Dfa(a.alphabet(), 0, std::move(delta), std::move(accepting)).canonical();
}

} // namespace cptk
