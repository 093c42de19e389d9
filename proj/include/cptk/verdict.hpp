#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cptk/words.hpp"

namespace cptk {

enum class Outcome { Certified, Refuted, Unknown };

std::string to_string(Outcome o);

/// Three-valued, bound-annotated answer to a yes/no question about languages.
///
/// Certified answers are proven on automata. Refuted answers carry a concrete
/// witness word whose membership was decided directly. Unknown means nothing
/// contradicted the claim on lex(0..horizon).
struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::optional<Word> witness;
    std::uint64_t horizon = 0;

    static Verdict certify() { return {Outcome::Certified, std::nullopt, 0}; }
    static Verdict refute(Word w) { return {Outcome::Refuted, std::move(w), 0}; }
    static Verdict unknown(std::uint64_t horizon) { return {Outcome::Unknown, std::nullopt, horizon}; }

    bool certified() const noexcept { return outcome == Outcome::Certified; }
    bool refuted() const noexcept { return outcome == Outcome::Refuted; }
    bool unknown() const noexcept { return outcome == Outcome::Unknown; }
    /// Not refuted: certified, or consistent up to the horizon.
    bool consistent() const noexcept { return outcome != Outcome::Refuted; }
};

enum class Finiteness { Finite, Infinite, UnknownUpTo };

std::string to_string(Finiteness f);

struct FinitenessVerdict {
    Finiteness kind = Finiteness::UnknownUpTo;
    /// Finite: exact member count. UnknownUpTo: members seen within the horizon.
    std::uint64_t count = 0;
    std::uint64_t horizon = 0;
    /// Infinite: prefix·cycleⁿ·suffix is a member for every n.
    Word prefix, cycle, suffix;

    bool finite() const noexcept { return kind == Finiteness::Finite; }
    bool infinite() const noexcept { return kind == Finiteness::Infinite; }
    bool exact() const noexcept { return kind != Finiteness::UnknownUpTo; }
};

} // namespace cptk
