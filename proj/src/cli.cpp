#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "cptk/cli.hpp"
#include "cptk/cohesion.hpp"
#include "cptk/constructions.hpp"
#include "cptk/error.hpp"
#include "cptk/hardcore.hpp"
#include "cptk/json_io.hpp"

namespace cptk {

namespace {

const char* const kSchemas = R"(Input documents (JSON):
  language  {"finite":["","ab"]} | {"dfa":{"alphabet":"ab","states":n,"initial":0,
            "accepting":[..],"transitions":[[..],..]}} | {"predicate":"square-length"}
            | {"op":"union"|"intersect","args":[..]} | {"op":"complement","arg":E}
            | {"op":"leftmark","symbol":"a","arg":E} | {"op":"leftquotient","word":"u","arg":E}
  family    {"builtin":"regular"|"finite"|"length","alphabet":"ab"}
            | {"alphabet":"ab","list":[language..],"closure":["u","s","co","cc","b"],
               "flags":{"union_closed":bool,"intersection_closed":bool,
                        "complement_closed":bool,"nontrivial":bool}}
  problem   {"alphabet":"ab","condition":language|null,"components":[language..]}
            (the alphabet defaults to the family's)
Traces are JSON lines {"n","word","action","cancelled":[..],"card","blocking"?}.
Exit codes: 0 success/certified/refuted-with-witness, 2 usage or input error,
3 precondition refuted, 4 inconclusive at the bounds, 5 invariant violation.
Every report records the bounds it was computed under. CPTK_THREADS caps workers.)";

struct Common {
    std::string out_path;
};

struct Emitter {
    std::ostream& out;
    const Common& common;

    void operator()(const json& report) const {
        if (common.out_path.empty()) {
            out << report.dump(2) << '\n';
            return;
        }
        std::ofstream f(common.out_path);
        if (!f) throw Error("cannot write " + common.out_path);
        f << report.dump(2) << '\n';
    }
};

FamilyEnum load_family(const std::string& path) { return family_from_json(read_document(path)); }

LangExpr load_lang(const std::string& path, const Alphabet& x) { return lang_from_json(read_document(path), &x); }

ProblemDocument load_problem(const std::string& path, const Alphabet& x) {
    json doc = read_document(path);
    if (doc.is_object() && !doc.contains("alphabet")) doc["alphabet"] = x.symbols();
    ProblemDocument p = problem_from_json(doc);
    if (!(p.problem.alphabet() == x))
        throw AlphabetError("problem alphabet " + p.problem.alphabet().symbols() + " differs from the family's " +
                            x.symbols());
    return p;
}

void positive(CLI::Option* opt) { opt->check(CLI::PositiveNumber); }

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification problems over denumerable language families", "cptk"};
    app.footer(kSchemas);
    app.require_subcommand(1);
    Common common;
    Emitter emit{out, common};
    std::function<int()> action;
    auto with_out = [&](CLI::App* sub) { sub->add_option("--out", common.out_path, "Write the JSON report here"); };

    // lex
    std::string alphabet = "ab";
    std::uint64_t start = 0, count = 10;
    std::optional<std::string> ord_of;
    {
        auto* sub = app.add_subcommand("lex", "List words in length-lex order, or rank one word");
        sub->add_option("--alphabet", alphabet, "Symbols in rank order")->capture_default_str();
        sub->add_option("--start", start, "First rank")->capture_default_str();
        sub->add_option("--count", count, "Number of words")->capture_default_str();
        sub->add_option("--ord", ord_of, "Print the rank of this word instead");
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                Alphabet x(alphabet);
                if (ord_of) {
                    x.require(*ord_of);
                    std::uint64_t r = x.ord(*ord_of);
                    emit({{"alphabet", alphabet}, {"word", *ord_of}, {"ord", r}});
                    err << show(*ord_of) << " has rank " << r << '\n';
                    return kExitOk;
                }
                json words = json::array();
                for (std::uint64_t i = 0; i < count; ++i) {
                    Word w = x.lex(start + i);
                    words.push_back(w);
                    err << show(w) << (i + 1 < count ? ", " : "\n");
                }
                emit({{"alphabet", alphabet}, {"start", start}, {"words", words}});
                return kExitOk;
            };
        });
    }

    std::string family_path, problem_path, lang_path, condition_path, target_path, trace_path;
    std::uint64_t index_bound = 64, horizon = 200, seed = 0, budget = 0;
    std::size_t samples = 100;

    // laws
    std::string law = "all";
    {
        auto* sub = app.add_subcommand("laws", "Sample the closure identities over a family");
        sub->add_option("--family", family_path)->required();
        sub->add_option("--law", law, "Law id or \"all\"")
            ->capture_default_str()
            ->check(CLI::IsMember({"all", "distributivity", "deMorgan", "cc-dc-fixpoint", "co-involution",
                                   "nontriviality-preservation"}));
        positive(sub->add_option("--samples", samples)->capture_default_str());
        sub->add_option("--horizon", horizon)->capture_default_str();
        positive(sub->add_option("--index-bound", index_bound)->capture_default_str());
        sub->add_option("--seed", seed)->capture_default_str();
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                std::vector<Law> laws;
                if (law == "all")
                    laws = {Law::Distributivity, Law::DeMorgan, Law::CcDcFixpoint, Law::CoInvolution,
                            Law::NontrivialityPreservation};
                else
                    laws = {law_from_string(law)};
                json reports = json::array();
                std::size_t bad = 0;
                for (Law l : laws) {
                    LawReport r = check_law(l, f, samples, horizon, index_bound, seed);
                    bad += r.disagreements;
                    reports.push_back(to_json(r));
                    err << to_string(l) << ": " << r.agreements << "/" << r.samples << " agree\n";
                }
                emit({{"family", f.name()}, {"reports", reports}});
                return bad ? kExitViolation : kExitOk;
            };
        });
    }

    // solve
    {
        auto* sub = app.add_subcommand("solve", "Search for an F-partition solving a (conditional) problem");
        sub->add_option("--family", family_path)->required();
        sub->add_option("--problem", problem_path)->required();
        positive(sub->add_option("--index-bound", index_bound)->capture_default_str());
        sub->add_option("--horizon", horizon)->capture_default_str();
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                ProblemDocument doc = load_problem(problem_path, f.alphabet());
                ProblemCheck check = doc.condition ? check_problem(ConditionalProblem{*doc.condition, doc.problem}, horizon)
                                                   : check_problem(doc.problem, horizon);
                if (check.refuted) {
                    emit({{"check", to_json(check)}});
                    for (const auto& m : check.messages) err << m << '\n';
                    return kExitPrecondition;
                }
                SolveResult r = doc.condition
                                    ? solve_conditional(ConditionalProblem{*doc.condition, doc.problem}, f, index_bound, horizon)
                                    : solve(doc.problem, f, index_bound, horizon);
                emit({{"check", to_json(check)}, {"result", to_json(r)}});
                err << (r.found() ? "certificate found" : "not found") << " (index bound " << index_bound
                    << ", horizon " << horizon << ")\n";
                return r.found() ? kExitOk : kExitInconclusive;
            };
        });
    }

    // cohesive
    std::size_t threshold = kInfiniteEvidence;
    bool core = false;
    {
        auto* sub = app.add_subcommand("cohesive", "Look for a dc pair splitting a language (or set(A) with --core)");
        sub->add_option("--family", family_path)->required();
        auto* lang = sub->add_option("--lang", lang_path, "Language to split");
        auto* prob = sub->add_option("--problem", problem_path, "Problem whose core status is checked");
        lang->excludes(prob);
        sub->add_option("--condition", condition_path, "Only witnesses Q ⊆ this language count");
        sub->add_flag("--core", core, "Core check of --problem (cohesion of set(A) plus sampled subproblems)");
        positive(sub->add_option("--index-bound", index_bound)->capture_default_str());
        sub->add_option("--horizon", horizon)->capture_default_str();
        positive(sub->add_option("--threshold", threshold, "Members within the horizon counted as infinite")
                     ->capture_default_str());
        sub->add_option("--samples", samples, "Subproblem samples for --core")->capture_default_str();
        sub->add_option("--seed", seed)->capture_default_str();
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                const Alphabet& x = f.alphabet();
                if (core) {
                    if (problem_path.empty()) throw CLI::ValidationError("--core needs --problem");
                    CoreReport r = check_core(load_problem(problem_path, x).problem, f, index_bound, horizon, samples, seed);
                    emit(to_json(r));
                    err << (r.refuted ? "not a core" : "no refutation") << " (index bound " << index_bound << ")\n";
                    if (r.contradiction) return kExitViolation;
                    return r.refuted ? kExitOk : kExitInconclusive;
                }
                LangExpr a = !lang_path.empty()     ? load_lang(lang_path, x)
                             : !problem_path.empty() ? set_of(load_problem(problem_path, x).problem)
                                                     : throw CLI::ValidationError("one of --lang, --problem is required");
                CohesionVerdict v = condition_path.empty()
                                        ? check_cohesive(a, f, index_bound, horizon, threshold)
                                        : check_ccohesive(a, load_lang(condition_path, x), f, index_bound, horizon, threshold);
                emit(to_json(v));
                err << (v.refuted ? "split by " + describe(*v.q) : std::string("no split")) << " (index bound "
                    << index_bound << ", horizon " << horizon << ")\n";
                return v.refuted ? kExitOk : kExitInconclusive;
            };
        });
    }

    // ccore
    {
        auto* sub = app.add_subcommand("ccore", "Per-component conditional core check");
        sub->add_option("--family", family_path)->required();
        sub->add_option("--problem", problem_path, "Problem with a condition (null reads as ∅)")->required();
        positive(sub->add_option("--index-bound", index_bound)->capture_default_str());
        sub->add_option("--horizon", horizon)->capture_default_str();
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                ProblemDocument doc = load_problem(problem_path, f.alphabet());
                CcoreReport r =
                    check_ccore(ConditionalProblem{doc.condition.value_or(LangExpr::empty()), doc.problem}, f, index_bound, horizon);
                emit(to_json(r));
                err << (r.refuted ? "not a conditional core" : "no refutation") << " (index bound " << index_bound << ")\n";
                return r.refuted ? kExitOk : kExitInconclusive;
            };
        });
    }

    // hardcore
    std::uint64_t steps = 1000;
    {
        auto* sub = app.add_subcommand("hardcore", "Run the diagonalization for a bounded number of steps");
        sub->add_option("--family", family_path)->required();
        sub->add_option("--condition", condition_path, "C (default ∅)");
        sub->add_option("--target", target_path, "A")->required();
        positive(sub->add_option("--steps", steps)->capture_default_str());
        sub->add_option("--budget", budget, "Membership-call budget, 0 for none")->capture_default_str();
        sub->add_option("--trace", trace_path, "Write the JSON-lines trace here");
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                const Alphabet& x = f.alphabet();
                LangExpr c = condition_path.empty() ? LangExpr::empty() : load_lang(condition_path, x);
                HardcoreRun r = hardcore_run(f, c, load_lang(target_path, x), steps, budget);
                if (!trace_path.empty()) {
                    std::ofstream t(trace_path);
                    if (!t) throw Error("cannot write " + trace_path);
                    write_trace(t, r.trace);
                }
                emit({{"state", to_json(r.state)},
                      {"steps", steps},
                      {"membership_calls", r.membership_calls},
                      {"recipe", "accept exactly the words in B below lex(steps)"}});
                err << "card " << r.state.card << " after " << steps << " steps, " << r.state.cancel.size()
                    << " cancelled\n";
                return kExitOk;
            };
        });
    }

    // verify-trace
    {
        auto* sub = app.add_subcommand("verify-trace", "Replay a trace and check its invariants");
        sub->add_option("--family", family_path)->required();
        sub->add_option("--condition", condition_path, "C (default ∅)");
        sub->add_option("--target", target_path, "A")->required();
        sub->add_option("--trace", trace_path)->required()->check(CLI::ExistingFile);
        with_out(sub);
        sub->callback([&] {
            action = [&] {
                FamilyEnum f = load_family(family_path);
                const Alphabet& x = f.alphabet();
                LangExpr c = condition_path.empty() ? LangExpr::empty() : load_lang(condition_path, x);
                std::ifstream in(trace_path);
                std::vector<TraceEntry> trace;
                try {
                    trace = read_trace(in);
                } catch (const ParseError& e) {
                    throw ParseError(trace_path + ": " + e.what(), e.line(), e.column());
                }
                TraceReport r = verify_trace(trace, f, c, load_lang(target_path, x));
                emit(to_json(r));
                for (const auto& v : r.violations) err << "step " << v.step << " (" << v.invariant << "): " << v.message << '\n';
                err << (r.ok ? "trace verified" : "trace rejected") << '\n';
                return r.ok ? kExitOk : kExitViolation;
            };
        });
    }

    // make
    std::string base_path;
    std::string make_alphabet;
    {
        auto* sub = app.add_subcommand("make", "Emit a named problem as JSON");
        sub->require_subcommand(1);
        for (const char* name : {"ziegler", "example26"}) {
            auto* kind = sub->add_subcommand(name, std::string(name) == "ziegler"
                                                       ? "(aA ∪ bAᶜ, bA ∪ cAᶜ, cA ∪ aAᶜ) over {a,b,c}"
                                                       : "condition aA ∪ bAᶜ, components (aAᶜ, bA)");
            kind->add_option("--base", base_path, "A")->required();
            kind->add_option("--alphabet", make_alphabet);
            with_out(kind);
            kind->callback([&, ziegler = std::string(name) == "ziegler"] {
                action = [&, ziegler] {
                    Alphabet x(make_alphabet.empty() ? (ziegler ? "abc" : "ab") : make_alphabet);
                    LangExpr a = load_lang(base_path, x);
                    if (ziegler) {
                        emit(to_json(ziegler_problem(a, x)));
                    } else {
                        ConditionalProblem p = example_26(a, x);
                        emit(to_json(p.problem, p.condition));
                    }
                    return kExitOk;
                };
            });
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    try {
        return action();
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "input error";
        if (e.line()) err << " at line " << e.line() << ", column " << e.column();
        err << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const AlphabetError& e) {
        err << "alphabet error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownPredicate& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "precondition refuted: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const StepBudgetExceeded& e) {
        err << "inconclusive: " << e.what() << '\n';
        return kExitInconclusive;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace cptk
