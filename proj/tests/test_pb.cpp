#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "stablepb/solver.hpp"
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

PBConstraint fix_var(int var, bool value) {
    PBConstraint c;
    c.terms.push_back({value ? 1LL : -1LL, var});
    c.rel = PBConstraint::Rel::Ge;
    c.bound = value ? 1 : 0;
    return c;
}

int count_disjuncts(const std::vector<PLwaFormula>& fs) {
    int n = 0;
    for (const auto& f : fs) {
        if (const auto* s = std::get_if<SupportImpl>(&f))
            n += static_cast<int>(s->bodies.size());
        else if (const auto* l = std::get_if<LoopImpl>(&f))
            n += static_cast<int>(l->supports.size());
    }
    return n;
}

int count_watom_occurrences(const std::vector<PLwaFormula>& fs) {
    int n = 0;
    auto bump = [&](const WeightAtom& w) {
        if (!w.is_unit())
            ++n;
    };
    for (const auto& f : fs) {
        if (const auto* r = std::get_if<RuleImpl>(&f)) {
            bump(r->head);
            for (const auto& w : r->body)
                bump(w);
        } else if (const auto* s = std::get_if<SupportImpl>(&f)) {
            for (const auto& body : s->bodies)
                for (const auto& w : body)
                    bump(w);
        } else {
            const auto& l = std::get<LoopImpl>(f);
            ++n;  // the loop disjunction atom W_L
            for (const auto& conj : l.supports)
                for (const auto& w : conj)
                    bump(w);
        }
    }
    return n;
}

}  // namespace

TEST_CASE("clausify keeps rule implications") {
    Program p = parse_program("1{a,b}2 :- 1{c}, 2[c=1,d=2].");
    Clausifier cl;
    std::vector<WaClause> cs = cl.clausify(completion(p)[0]);
    REQUIRE(cs.size() == 1);
    REQUIRE(cs[0].body.size() == 2);
    REQUIRE(cs[0].heads.size() == 1);
    REQUIRE(cl.aux_atoms().empty());
}

TEST_CASE("clausify support formulas introduces shared body indicators") {
    Program p = parse_program("1{x} :- 1{a,b}, {c}0. 1{x} :- 2[a=1,b=2].");
    std::vector<PLwaFormula> comp = completion(p);
    Clausifier cl;
    // find the support formula for x
    std::vector<WaClause> cs;
    for (const auto& f : comp)
        if (const auto* s = std::get_if<SupportImpl>(&f))
            if (s->atom == p.atoms.id_of("x"))
                cs = cl.clausify(f);
    REQUIRE(cl.aux_atoms().size() == 2);  // one b_r per rule
    // clause shapes: defs (bd -> b_r), projections (b_r -> A_j), main (x -> b_1 | b_2)
    // rule 0 body has 2 atoms, rule 1 body has 1
    REQUIRE(cs.size() == (1 + 2) + (1 + 1) + 1);
    const WaClause& main = cs.back();
    REQUIRE(main.body.size() == 1);
    REQUIRE(main.body[0].kind == ClauseAtom::Kind::Watom);
    REQUIRE(main.heads.size() == 2);
    REQUIRE(main.heads[0].kind == ClauseAtom::Kind::Aux);

    // a second atom supported by the same rules reuses the indicators
    Clausifier cl2;
    Program q = parse_program("1{x,y} :- 1{a,b}.");
    std::vector<PLwaFormula> comp2 = completion(q);
    int auxen = 0;
    for (const auto& f : comp2)
        if (std::holds_alternative<SupportImpl>(f)) {
            cl2.clausify(f);
            ++auxen;
        }
    REQUIRE(auxen >= 2);
    REQUIRE(cl2.aux_atoms().size() == 1);
}

TEST_CASE("clausify loop formulas") {
    Program p = parse_program("1{a} :- 1{b}. 1{b} :- 1{a}.");
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    Clausifier cl;
    std::vector<WaClause> cs = cl.clausify(PLwaFormula{loop_formula(p, AtomSet{a, b})});
    REQUIRE(cl.aux_atoms().size() == 2);
    for (const auto& info : cl.aux_atoms())
        REQUIRE(info.src == AuxAtomInfo::Src::LoopInd);
    // main clause comes last: W_L -> bdf_1 | bdf_2
    const WaClause& main = cs.back();
    REQUIRE(main.body.size() == 1);
    REQUIRE(main.body[0].watom.elems.size() == 2);
    REQUIRE(main.heads.size() == 2);
}

TEST_CASE("pb translation of a unit-atom clause is a single constraint") {
    Program p = parse_program("1{h} :- 1{b1}, 1{b2}.");
    PBTheory t = pb_translate(completion(p), at_atoms(p));
    // the rule implication clause: -b1 -b2 +h >= -1
    bool found = false;
    for (const auto& c : t.constraints) {
        if (c.terms.size() == 3 && c.bound == -1 && c.rel == PBConstraint::Rel::Ge) {
            long long neg = 0, pos = 0;
            for (const auto& term : c.terms)
                (term.coef < 0 ? neg : pos) += 1;
            if (neg == 2 && pos == 1)
                found = true;
        }
    }
    REQUIRE(found);
    // all variables are program atoms or rule indicators, no watom splits
    for (const auto& v : t.vars)
        REQUIRE((v.kind == PBVarInfo::Kind::ProgramAtom || v.kind == PBVarInfo::Kind::BodyInd));
}

TEST_CASE("pb translation splits a two-sided weight atom") {
    // single clause: 2[a=1,b=2]2 -> x
    Program p;
    AtomId a = p.atoms.intern("a"), b = p.atoms.intern("b"), x = p.atoms.intern("x");
    WeightAtom w;
    w.lower = 2;
    w.upper = 2;
    w.elems = {{a, false, 1}, {b, false, 2}};
    Rule r;
    r.head = WeightAtom::unit(x);
    r.body = {w};
    p.rules.push_back(r);

    PBTheory t = pb_translate({PLwaFormula{RuleImpl{p.rules[0].body, p.rules[0].head, 0}}},
                              at_atoms(p));
    // vars: a, b, x, then b, b+, b- of the split
    REQUIRE(t.num_vars() == 6);
    int vb = 3, vplus = 4, vminus = 5;
    REQUIRE(t.vars[static_cast<std::size_t>(vb)].kind == PBVarInfo::Kind::WatomB);
    REQUIRE(t.vars[static_cast<std::size_t>(vplus)].kind == PBVarInfo::Kind::WatomBPlus);
    REQUIRE(t.vars[static_cast<std::size_t>(vminus)].kind == PBVarInfo::Kind::WatomBMinus);

    auto has = [&](std::vector<std::pair<long long, int>> terms, PBConstraint::Rel rel,
                   long long bound) {
        for (const auto& c : t.constraints) {
            if (c.rel != rel || c.bound != bound || c.terms.size() != terms.size())
                continue;
            bool all = true;
            for (const auto& [coef, var] : terms) {
                bool one = false;
                for (const auto& term : c.terms)
                    if (term.coef == coef && term.var == var)
                        one = true;
                all = all && one;
            }
            if (all)
                return true;
        }
        return false;
    };
    int va = t.atom_var.at(a), vbb = t.atom_var.at(b);
    // three linking clauses
    REQUIRE(has({{-1, vb}, {1, vplus}}, PBConstraint::Rel::Ge, 0));
    REQUIRE(has({{-1, vb}, {1, vminus}}, PBConstraint::Rel::Ge, 0));
    REQUIRE(has({{-1, vplus}, {-1, vminus}, {1, vb}}, PBConstraint::Rel::Ge, -1));
    // lower pair: -2 b+ + a + 2b >= 0 and -2 b+ + a + 2b <= 1
    REQUIRE(has({{-2, vplus}, {1, va}, {2, vbb}}, PBConstraint::Rel::Ge, 0));
    REQUIRE(has({{-2, vplus}, {1, va}, {2, vbb}}, PBConstraint::Rel::Le, 1));
    // upper pair: 1 b- + a + 2b <= 3 and 3 b- + a + 2b >= 3
    REQUIRE(has({{1, vminus}, {1, va}, {2, vbb}}, PBConstraint::Rel::Le, 3));
    REQUIRE(has({{3, vminus}, {1, va}, {2, vbb}}, PBConstraint::Rel::Ge, 3));
}

TEST_CASE("one-sided atoms collapse to a single indicator") {
    Program p = parse_program("1{x} :- 2{a,b,c}. 1{y} :- {a,b}1.");
    PBTheory t = pb_translate(completion(p), at_atoms(p));
    int plus = 0, minus = 0, both = 0;
    for (const auto& v : t.vars) {
        if (v.kind == PBVarInfo::Kind::WatomBPlus)
            ++plus;
        if (v.kind == PBVarInfo::Kind::WatomBMinus)
            ++minus;
        if (v.kind == PBVarInfo::Kind::WatomB)
            ++both;
    }
    REQUIRE(plus == 1);
    REQUIRE(minus == 1);
    REQUIRE(both == 0);
}

TEST_CASE("support with no rules forces the atom false") {
    Program p = parse_program("1{a} :- 1{c}.");
    PBTheory t = pb_translate(completion(p), at_atoms(p));
    int vc = t.atom_var.at(p.atoms.id_of("c"));
    bool found = false;
    for (const auto& c : t.constraints)
        if (c.terms.size() == 1 && c.terms[0].var == vc && c.terms[0].coef == -1 &&
            c.bound == 0 && c.rel == PBConstraint::Rel::Ge)
            found = true;
    REQUIRE(found);
}

TEST_CASE("emit_opb normalizes to >= and is deterministic") {
    PBTheory t;
    t.vars.resize(2);
    PBConstraint c;
    c.terms = {{1, 0}, {2, 1}};
    c.rel = PBConstraint::Rel::Le;
    c.bound = 3;
    t.constraints.push_back(c);
    REQUIRE(emit_opb(t) == "* #variable= 2 #constraint= 1\n-1 x1 -2 x2 >= -3 ;\n");

    PBTheory empty;
    REQUIRE(emit_opb(empty) == "* #variable= 0 #constraint= 0\n");
}

TEST_CASE("golden OPB output is byte-stable") {
    Program p = parse_program(
        "2{a,b,c} :- 1{a,d}, {c}0.\n"
        "1{b,c,d} :- 1{a}, {a,b,d}2.\n"
        "1{a}.\n");
    std::string text = emit_opb(pb_translate(completion(p), at_atoms(p)));
    std::string again = emit_opb(pb_translate(completion(p), at_atoms(p)));
    REQUIRE(text == again);
    std::ifstream golden(std::string(STABLEPB_TEST_DATA_DIR) + "/three_rules.opb");
    REQUIRE(golden.good());
    std::string expect((std::istreambuf_iterator<char>(golden)),
                       std::istreambuf_iterator<char>());
    REQUIRE(text == expect);
}

TEST_CASE("parse_opb inverts emit_opb") {
    std::mt19937 rng(97);
    testutil::RandomProgramOptions opt;
    for (int i = 0; i < 100; ++i) {
        Program p = testutil::random_program(rng, opt);
        PBTheory t = pb_translate(loop_completion(p), at_atoms(p));
        PBTheory back = parse_opb(emit_opb(t));
        REQUIRE(back.num_vars() <= t.num_vars());
        REQUIRE(back.constraints.size() == t.constraints.size());
        // solving both gives the same satisfiability
        SolveResult r1 = solve_builtin(t);
        PBTheory padded = back;
        padded.vars.resize(static_cast<std::size_t>(t.num_vars()));
        SolveResult r2 = solve_builtin(padded);
        REQUIRE(r1.status == r2.status);
    }
}

TEST_CASE("block_model excludes exactly one projection") {
    Program p = parse_program("1{a,b}.");
    PBTheory t = pb_translate(completion(p), at_atoms(p));
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    PBConstraint none = block_model(t, AtomSet{});
    REQUIRE(none.bound == 1);
    for (const auto& term : none.terms)
        REQUIRE(term.coef == 1);
    PBConstraint justa = block_model(t, AtomSet{a});
    REQUIRE(justa.bound == 0);
    (void)b;
}

TEST_CASE("unique extension onto PB models") {
    std::mt19937 rng(101);
    testutil::RandomProgramOptions opt;
    opt.num_atoms = 5;
    for (int i = 0; i < 120; ++i) {
        Program p = testutil::random_program(rng, opt);
        std::vector<PLwaFormula> fs = loop_completion(p);
        AtomSet at = at_atoms(p);
        PBTheory t = pb_translate(fs, at);
        std::set<Interpretation> fmodels = formula_models(fs, at);
        const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
        for (std::uint32_t mask = 0; mask < all; ++mask) {
            Interpretation m = mask_set(at.ids(), mask);
            PBTheory fixed = t;
            for (const auto& [atom, var] : t.atom_var)
                fixed.constraints.push_back(fix_var(var, m.contains(atom)));
            SolveResult r = solve_builtin(fixed);
            if (fmodels.count(m)) {
                REQUIRE(r.status == SolveStatus::Sat);
                REQUIRE(project_model(t, r.assignment) == m);
                // the extension is unique: block the full assignment
                PBConstraint blockall;
                long long ones = 0;
                for (int v = 0; v < t.num_vars(); ++v) {
                    if (r.assignment[static_cast<std::size_t>(v)]) {
                        blockall.terms.push_back({-1, v});
                        ++ones;
                    } else {
                        blockall.terms.push_back({1, v});
                    }
                }
                blockall.rel = PBConstraint::Rel::Ge;
                blockall.bound = 1 - ones;
                fixed.constraints.push_back(blockall);
                REQUIRE(solve_builtin(fixed).status == SolveStatus::Unsat);
            } else {
                REQUIRE(r.status == SolveStatus::Unsat);
            }
        }
    }
}

TEST_CASE("aux variable count is linear in the input") {
    std::mt19937 rng(103);
    testutil::RandomProgramOptions opt;
    for (int i = 0; i < 200; ++i) {
        Program p = testutil::random_program(rng, opt);
        std::vector<PLwaFormula> fs = loop_completion(p);
        PBTheory t = pb_translate(fs, at_atoms(p));
        int aux = t.num_vars() - static_cast<int>(at_atoms(p).size());
        REQUIRE(aux <= 3 * count_watom_occurrences(fs) + count_disjuncts(fs));
    }
}
