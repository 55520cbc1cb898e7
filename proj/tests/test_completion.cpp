#include <catch2/catch_amalgamated.hpp>

#include "stablepb/completion.hpp"
#include "testutil.hpp"

using namespace stablepb;
using testutil::mask_set;

namespace {

std::set<Interpretation> formula_models(const std::vector<PLwaFormula>& fs, const AtomSet& at) {
    std::set<Interpretation> out;
    const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
    for (std::uint32_t mask = 0; mask < all; ++mask) {
        Interpretation m = mask_set(at.ids(), mask);
        if (eval_formulas(fs, m))
            out.insert(m);
    }
    return out;
}

}  // namespace

TEST_CASE("completion of a single fact") {
    Program p = parse_program("1{a}.");
    std::vector<PLwaFormula> comp = completion(p);
    REQUIRE(comp.size() == 2);
    const auto& rule = std::get<RuleImpl>(comp[0]);
    REQUIRE(rule.body.empty());
    const auto& supp = std::get<SupportImpl>(comp[1]);
    REQUIRE(supp.atom == p.atoms.id_of("a"));
    REQUIRE(supp.bodies.size() == 1);
    REQUIRE(supp.bodies[0].empty());
}

TEST_CASE("body-only atoms are forced false") {
    Program p = parse_program("1{a} :- 1{c}.");
    std::vector<PLwaFormula> comp = completion(p);
    bool found = false;
    for (const auto& f : comp) {
        if (const auto* s = std::get_if<SupportImpl>(&f)) {
            if (s->atom == p.atoms.id_of("c")) {
                found = true;
                REQUIRE(s->bodies.empty());
            }
        }
    }
    REQUIRE(found);
    // no model of the completion contains c
    for (const auto& m : formula_models(comp, at_atoms(p)))
        REQUIRE_FALSE(m.contains(p.atoms.id_of("c")));
}

TEST_CASE("completion models are the supported models") {
    Program p = parse_program("1{c,d,e}. 1{a,b}1 :- 1{c}, not e.");
    REQUIRE(formula_models(completion(p), at_atoms(p)) == enum_supported(p));
}

TEST_CASE("restriction of lower-bound atoms") {
    Program p = parse_program("1{b}. 2[a=1,b=2]. 1{a,b}.");
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    WeightAtom r0 = restrict_watom(p.rules[0].head, AtomSet{b});
    REQUIRE(r0.elems.empty());
    REQUIRE(r0.lower == 1);  // unsatisfiable
    WeightAtom r1 = restrict_watom(p.rules[1].head, AtomSet{p.atoms.intern("c")});
    REQUIRE(r1 == p.rules[1].head);
    WeightAtom r2 = restrict_watom(p.rules[2].head, AtomSet{b});
    REQUIRE(render_watom(r2, p.atoms) == "1{a}");
    (void)a;
}

TEST_CASE("loop formula of the two-cycle program") {
    Program p = parse_program("1{a} :- 1{b}. 1{b} :- 1{a}.");
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    LoopImpl lp = loop_formula(p, AtomSet{a, b});
    REQUIRE(lp.supports.size() == 2);
    for (const auto& conj : lp.supports) {
        REQUIRE(conj.size() == 1);
        REQUIRE(conj[0].elems.empty());
        REQUIRE(conj[0].effective_lower() == 1);  // inconsistent support
    }
    // LP(L) forces a and b false
    REQUIRE_FALSE(eval_formula(PLwaFormula{lp}, AtomSet{a}));
    REQUIRE_FALSE(eval_formula(PLwaFormula{lp}, AtomSet{a, b}));
    REQUIRE(eval_formula(PLwaFormula{lp}, AtomSet{}));
}

TEST_CASE("fact rules give empty supports") {
    Program p = parse_program("1{a}.");
    AtomId a = p.atoms.id_of("a");
    LoopImpl lp = loop_formula(p, AtomSet{a});
    REQUIRE(lp.supports.size() == 1);
    REQUIRE(lp.supports[0].empty());
    REQUIRE(eval_formula(PLwaFormula{lp}, AtomSet{a}));
}

TEST_CASE("loop completion of the two-cycle program") {
    Program p = parse_program("1{a} :- 1{b}. 1{b} :- 1{a}.");
    std::set<Interpretation> models = formula_models(loop_completion(p), at_atoms(p));
    REQUIRE(models == std::set<Interpretation>{AtomSet{}});
    REQUIRE(models == enum_stable(p));
}

TEST_CASE("acyclic Horn programs need no loop formulas") {
    Program p = parse_program("1{a}. 1{b} :- 1{a}.");
    AtomSet at = at_atoms(p);
    REQUIRE(formula_models(loop_completion(p), at) == formula_models(completion(p), at));
}

TEST_CASE("completion and loop completion match the enumeration oracles") {
    std::mt19937 rng(83);
    testutil::RandomProgramOptions opt;
    opt.num_atoms = 6;
    for (int i = 0; i < 300; ++i) {
        Program p = testutil::random_program(rng, opt);
        AtomSet at = at_atoms(p);
        REQUIRE(formula_models(completion(p), at) == enum_supported(p));
        REQUIRE(formula_models(loop_completion(p), at) == enum_stable(p));
    }
}

TEST_CASE("non-stable supported models violate all terminating residue loops") {
    std::mt19937 rng(89);
    testutil::RandomProgramOptions opt;
    opt.num_atoms = 6;
    for (int i = 0; i < 300; ++i) {
        Program p = testutil::random_program(rng, opt);
        MProgram mp = mc_transform(p);
        Digraph dep = dependency_graph(mp, at_atoms(p));
        AtomSet at = at_atoms(p);
        const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
        for (std::uint32_t mask = 0; mask < all; ++mask) {
            Interpretation m = mask_set(at.ids(), mask);
            if (!eval_formulas(completion(p), m))
                continue;
            StabilityReport rep = stability(mp, p, m);
            if (rep.residue.empty())
                continue;
            std::vector<Loop> loops = terminating_loops(induced(dep, rep.residue));
            REQUIRE_FALSE(loops.empty());
            for (const Loop& l : loops)
                REQUIRE_FALSE(eval_formula(PLwaFormula{loop_formula(p, l)}, m));
        }
    }
}

TEST_CASE("formula rendering") {
    Program p = parse_program("1{a} :- 1{b}. 1{b} :- 1{a}.");
    std::vector<PLwaFormula> comp = completion(p);
    REQUIRE(render_formula(comp[0], p.atoms) == "1{b} -> 1{a}");
    REQUIRE(render_formula(comp[2], p.atoms) == "a -> (1{b})");
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    PLwaFormula lf{loop_formula(p, AtomSet{a, b})};
    REQUIRE(render_formula(lf, p.atoms) == "a | b -> (false) | (false)");
}
