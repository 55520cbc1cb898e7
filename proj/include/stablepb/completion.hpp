#pragma once

#include <cassert>
#include <string>
#include <variant>
#include <vector>

#include "stablepb/analysis.hpp"

namespace stablepb {

/// bd(r) -> hd(r), with the source rule's two-sided weight atoms intact.
struct RuleImpl {
    std::vector<WeightAtom> body;
    WeightAtom head;
    int rule = -1;
};

/// atom -> disjunction of supporting rule bodies. An empty bodies list
/// forces the atom false; an empty body inside the list is a true disjunct.
struct SupportImpl {
    AtomId atom = -1;
    std::vector<std::vector<WeightAtom>> bodies;
    std::vector<int> rules;  // source rule per disjunct
};

/// Loop formula: some loop atom true -> some external support holds.
struct LoopImpl {
    std::vector<AtomId> loop_atoms;
    std::vector<std::vector<WeightAtom>> supports;
    std::vector<int> rules;  // source rule per support
};

using PLwaFormula = std::variant<RuleImpl, SupportImpl, LoopImpl>;

/// Comp(P): one rule implication per rule and one support implication per
/// atom of At(P). Atoms with no supporting rule get an empty disjunction.
inline std::vector<PLwaFormula> completion(const Program& p) {
    std::vector<PLwaFormula> out;
    for (int i = 0; i < static_cast<int>(p.rules.size()); ++i) {
        const Rule& r = p.rules[static_cast<std::size_t>(i)];
        out.push_back(RuleImpl{r.body, r.head, i});
    }
    for (AtomId a : at_atoms(p)) {
        SupportImpl s;
        s.atom = a;
        for (int i = 0; i < static_cast<int>(p.rules.size()); ++i) {
            const Rule& r = p.rules[static_cast<std::size_t>(i)];
            if (r.head.domain().contains(a)) {
                s.bodies.push_back(r.body);
                s.rules.push_back(i);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Restriction of a lower-bound weight atom to exclude the loop L: elements
/// whose atom lies in L are deleted, the bound stays. This is the monotone
/// reading; the result may be unsatisfiable, which is exactly what makes a
/// loop lack external support.
inline WeightAtom restrict_watom(const WeightAtom& w, const AtomSet& l) {
    assert(!w.upper);
    WeightAtom out;
    out.lower = w.lower;
    for (const auto& e : w.elems)
        if (!l.contains(e.atom))
            out.elems.push_back(e);
    return out;
}

/// LP(L) over the source rules: for every rule whose head domain meets L,
/// the support conjunction collects the L-restricted lower-bound part and the
/// plain upper-bound part of every body atom.
inline LoopImpl loop_formula(const Program& p, const Loop& l) {
    assert(!l.empty());
    LoopImpl f;
    f.loop_atoms = l.ids();
    for (int i = 0; i < static_cast<int>(p.rules.size()); ++i) {
        const Rule& r = p.rules[static_cast<std::size_t>(i)];
        if (!r.head.domain().intersects(l))
            continue;
        std::vector<WeightAtom> conj;
        for (const auto& w : r.body) {
            if (!w.lower_vacuous()) {
                WeightAtom lowpart;
                lowpart.lower = w.effective_lower();
                lowpart.elems = w.elems;
                conj.push_back(restrict_watom(lowpart, l));
            }
            if (!w.upper_vacuous()) {
                WeightAtom uppart;
                uppart.upper = w.effective_upper();
                uppart.elems = w.elems;
                conj.push_back(uppart);
            }
        }
        f.supports.push_back(std::move(conj));
        f.rules.push_back(i);
    }
    return f;
}

/// LComp(P) = Comp(P) plus a loop formula for every loop of the positive
/// dependency graph. Exhaustive over loops, so capped at 12 atoms; the
/// driver handles larger programs lazily.
inline std::vector<PLwaFormula> loop_completion(const Program& p) {
    std::vector<PLwaFormula> out = completion(p);
    for (const Loop& l : all_loops(dependency_graph(p)))
        out.push_back(loop_formula(p, l));
    return out;
}

// ---------------------------------------------------------------------------
// Direct evaluation, used by oracles and the loop-violation check.

inline bool eval_formula(const PLwaFormula& f, const Interpretation& m) {
    if (const auto* r = std::get_if<RuleImpl>(&f))
        return !satisfies_body(m, r->body) || satisfies_watom(m, r->head);
    if (const auto* s = std::get_if<SupportImpl>(&f)) {
        if (!m.contains(s->atom))
            return true;
        for (const auto& body : s->bodies)
            if (satisfies_body(m, body))
                return true;
        return false;
    }
    const auto& l = std::get<LoopImpl>(f);
    bool triggered = false;
    for (AtomId a : l.loop_atoms)
        if (m.contains(a)) {
            triggered = true;
            break;
        }
    if (!triggered)
        return true;
    for (const auto& conj : l.supports)
        if (satisfies_body(m, conj))
            return true;
    return false;
}

inline bool eval_formulas(const std::vector<PLwaFormula>& fs, const Interpretation& m) {
    for (const auto& f : fs)
        if (!eval_formula(f, m))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Rendering for --dump-completion: the program grammar plus ->, |, &.

namespace detail {

inline std::string render_conj(const std::vector<WeightAtom>& conj, const AtomTable& atoms) {
    if (conj.empty())
        return "true";
    std::string out;
    for (std::size_t i = 0; i < conj.size(); ++i) {
        if (i > 0)
            out += " & ";
        out += render_watom(conj[i], atoms);
    }
    return out;
}

inline std::string render_disj(const std::vector<std::vector<WeightAtom>>& bodies,
                               const AtomTable& atoms) {
    if (bodies.empty())
        return "false";
    std::string out;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        if (i > 0)
            out += " | ";
        out += "(" + render_conj(bodies[i], atoms) + ")";
    }
    return out;
}

}  // namespace detail

inline std::string render_formula(const PLwaFormula& f, const AtomTable& atoms) {
    if (const auto* r = std::get_if<RuleImpl>(&f))
        return detail::render_conj(r->body, atoms) + " -> " + render_watom(r->head, atoms);
    if (const auto* s = std::get_if<SupportImpl>(&f))
        return atoms.name(s->atom) + " -> " + detail::render_disj(s->bodies, atoms);
    const auto& l = std::get<LoopImpl>(f);
    std::string lhs;
    for (std::size_t i = 0; i < l.loop_atoms.size(); ++i) {
        if (i > 0)
            lhs += " | ";
        lhs += atoms.name(l.loop_atoms[i]);
    }
    return lhs + " -> " + detail::render_disj(l.supports, atoms);
}

}  // namespace stablepb
