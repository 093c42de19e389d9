#include <random>

#include "cptk/error.hpp"
#include "cptk/families.hpp"

namespace cptk {

namespace {

struct Sides {
    LangExpr lhs, rhs;
};

class Harness {
public:
    Harness(LawReport& report, const Alphabet& alphabet, std::uint64_t horizon)
        : report_(report), alphabet_(alphabet), horizon_(horizon) {}

    void compare(const LangExpr& lhs, const LangExpr& rhs) {
        std::size_t sample = report_.samples++;
        std::optional<Word> diff;
        auto a = fingerprint(lhs, alphabet_, horizon_), b = fingerprint(rhs, alphabet_, horizon_);
        if (a != b) {
            auto d = a ^ b;
            diff = alphabet_.lex(d.find_first());
        } else if (lhs.regular() && rhs.regular()) {
            ++report_.exact;
            diff = product(to_automaton(lhs, alphabet_), to_automaton(rhs, alphabet_), BoolOp::Xor).least_word();
        }
        if (!diff) {
            ++report_.agreements;
            return;
        }
        ++report_.disagreements;
        if (!report_.failing_sample) {
            report_.failing_sample = sample;
            report_.counterexample = diff;
        }
    }

    void disagree(std::string note) {
        std::size_t sample = report_.samples++;
        ++report_.disagreements;
        if (!report_.failing_sample) report_.failing_sample = sample;
        report_.notes.push_back(std::move(note));
    }

private:
    LawReport& report_;
    const Alphabet& alphabet_;
    std::uint64_t horizon_;
};

std::vector<BigCode> sample_tuple(std::mt19937_64& rng, std::uint64_t bound, std::size_t max_len) {
    std::vector<BigCode> out(1 + rng() % max_len);
    for (auto& x : out) x = rng() % bound;
    return out;
}

void distributivity(Harness& h, const FamilyEnum& f, std::mt19937_64& rng, std::size_t n, std::uint64_t bound) {
    FamilyEnum us = close_s(close_u(f)), su = close_u(close_s(f));
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::vector<BigCode>> outer;
        for (std::size_t k = 1 + rng() % 3; k > 0; --k) outer.push_back(sample_tuple(rng, bound, 3));
        std::vector<BigCode> u_codes;
        for (const auto& inner : outer) u_codes.push_back(big_tuple(inner));
        // ∩ₖ ∪ⱼ Aₖⱼ = ∪ over choice functions c of ∩ₖ A_{k,c(k)}
        std::vector<BigCode> s_codes;
        std::vector<std::size_t> choice(outer.size(), 0);
        for (;;) {
            std::vector<BigCode> picked;
            for (std::size_t k = 0; k < outer.size(); ++k) picked.push_back(outer[k][choice[k]]);
            s_codes.push_back(big_tuple(picked));
            std::size_t k = outer.size();
            while (k > 0 && ++choice[k - 1] == outer[k - 1].size()) choice[--k] = 0;
            if (k == 0) break;
        }
        h.compare(us(big_tuple(u_codes)), su(big_tuple(s_codes)));
    }
}

void de_morgan(Harness& h, const FamilyEnum& f, std::mt19937_64& rng, std::size_t n, std::uint64_t bound) {
    FamilyEnum co_u = close_u(close_co(f)), s_co = close_co(close_s(f));
    for (std::size_t t = 0; t < n; ++t) {
        BigCode code = big_tuple(sample_tuple(rng, bound, 4));
        h.compare(co_u(code), s_co(code));
    }
}

void co_involution(Harness& h, const FamilyEnum& f, std::mt19937_64& rng, std::size_t n, std::uint64_t bound) {
    FamilyEnum twice = close_co(close_co(f));
    for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t i = rng() % bound;
        h.compare(twice(i), f(i));
    }
}

// Every member of Fᶜᶜ has its complement in Fᶜᶜ, at the neighbouring index.
void cc_dc_fixpoint(Harness& h, const FamilyEnum& f, std::mt19937_64& rng, std::size_t n, std::uint64_t bound) {
    FamilyEnum cc = close_cc(f);
    for (std::size_t t = 0; t < n; ++t) {
        std::uint64_t i = rng() % (2 * bound);
        h.compare(cc(i), LangExpr::complement(cc(i ^ 1)));
    }
}

void nontriviality(Harness& h, LawReport& report, const FamilyEnum& f, std::mt19937_64& rng, std::size_t n,
                   std::uint64_t bound) {
    if (!f.flags().nontrivial) {
        report.notes.push_back(f.name() + " is not declared nontrivial; the law is vacuous");
        return;
    }
    const Alphabet& x = f.alphabet();
    std::vector<FamilyEnum> closures{close_cc(f), close_u(f), close_s(f), close_b(f)};
    for (const FamilyEnum& g : closures) {
        if (!g.flags().nontrivial) h.disagree(g.name() + " lost the nontrivial flag");
        if (!g.can_locate()) {
            report.notes.push_back(g.name() + ": members cannot be located, finite variation unchecked");
            continue;
        }
        for (const Dfa& d : {Dfa::empty(x), Dfa::universal(x)}) {
            auto k = g.locate(d);
            if (!k) h.disagree(g.name() + ": " + (d.is_empty() ? "∅" : "X*") + " not found");
            else h.compare(g(*k), LangExpr::automaton(d));
        }
    }
    std::size_t unresolved = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const FamilyEnum& g = closures[t % closures.size()];
        if (!g.can_locate()) continue;
        BigCode i = g.name().rfind("cc(", 0) == 0 ? BigCode(rng() % (2 * bound)) : big_tuple(sample_tuple(rng, bound, 2));
        std::vector<Word> d;
        for (std::size_t k = 1 + rng() % 3; k > 0; --k) d.push_back(x.lex(rng() % 31));
        LangExpr base = g(i), finite = LangExpr::finite(d);
        for (const LangExpr& target : {base | finite, base & ~finite}) {
            auto k = g.locate(to_automaton(target, x));
            if (!k) {
                ++unresolved;
                continue;
            }
            h.compare(g(*k), target);
        }
    }
    if (unresolved) report.notes.push_back(std::to_string(unresolved) + " finite variations not located");
}

} // namespace

Law law_from_string(const std::string& id) {
    if (id == "distributivity") return Law::Distributivity;
    if (id == "deMorgan") return Law::DeMorgan;
    if (id == "cc-dc-fixpoint") return Law::CcDcFixpoint;
    if (id == "co-involution") return Law::CoInvolution;
    if (id == "nontriviality-preservation") return Law::NontrivialityPreservation;
    throw PreconditionError("unknown law \"" + id + "\"");
}

std::string to_string(Law law) {
    switch (law) {
    case Law::Distributivity: return "distributivity";
    case Law::DeMorgan: return "deMorgan";
    case Law::CcDcFixpoint: return "cc-dc-fixpoint";
    case Law::CoInvolution: return "co-involution";
    case Law::NontrivialityPreservation: return "nontriviality-preservation";
    }
    return "?";
}

LawReport check_law(Law law, const FamilyEnum& family, std::size_t samples, std::uint64_t horizon,
                    std::uint64_t index_bound, std::uint64_t seed) {
    if (index_bound == 0) throw PreconditionError("index_bound must be positive");
    LawReport report;
    report.law = law;
    report.horizon = horizon;
    Harness h(report, family.alphabet(), horizon);
    std::mt19937_64 rng(seed);
    switch (law) {
    case Law::Distributivity: distributivity(h, family, rng, samples, index_bound); break;
    case Law::DeMorgan: de_morgan(h, family, rng, samples, index_bound); break;
    case Law::CoInvolution: co_involution(h, family, rng, samples, index_bound); break;
    case Law::CcDcFixpoint: cc_dc_fixpoint(h, family, rng, samples, index_bound); break;
    case Law::NontrivialityPreservation: nontriviality(h, report, family, rng, samples, index_bound); break;
    }
    return report;
}

json to_json(const LawReport& r) {
    json out{{"law", to_string(r.law)},       {"samples", r.samples}, {"agreements", r.agreements},
             {"disagreements", r.disagreements}, {"exact", r.exact},     {"horizon", r.horizon},
             {"notes", r.notes}};
    if (r.failing_sample) out["failing_sample"] = *r.failing_sample;
    if (r.counterexample) out["counterexample"] = *r.counterexample;
    return out;
}

} // namespace cptk
