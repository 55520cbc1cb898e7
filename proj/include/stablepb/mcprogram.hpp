#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "stablepb/program.hpp"

namespace stablepb {

/// A literal of a monotone-constraint rule: a lower-bound weight atom,
/// possibly under default negation. Kept intensional so the pipeline scales
/// past what explicit constraint families allow.
struct MonoLit {
    bool negated = false;
    WeightAtom constraint;  // lower-bound-only form, upper bound absent

    bool operator==(const MonoLit& o) const {
        return negated == o.negated && constraint == o.constraint;
    }
};

struct MRule {
    WeightAtom head;  // lower-bound weight atom; falsum for constraint rules
    std::vector<MonoLit> body;
    int origin = -1;  // index of the source rule this one came from

    bool same_shape(const MRule& o) const { return head == o.head && body == o.body; }
};

struct MProgram {
    std::vector<MRule> rules;
    AtomTable atoms;
};

/// Horn: no negated literals anywhere. Produced by reduct().
struct HornMProgram {
    std::vector<MRule> rules;  // invariant: every body literal is positive
    AtomTable atoms;
};

inline bool satisfies_lit(const Interpretation& m, const MonoLit& lit) {
    bool sat = satisfies_watom(m, lit.constraint);
    return lit.negated ? !sat : sat;
}

inline bool satisfies_mbody(const Interpretation& m, const std::vector<MonoLit>& body) {
    for (const auto& lit : body)
        if (!satisfies_lit(m, lit))
            return false;
    return true;
}

template <typename Prog>
inline std::vector<int> applicable_mrules(const Prog& p, const Interpretation& m) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(p.rules.size()); ++i)
        if (satisfies_mbody(m, p.rules[i].body))
            out.push_back(i);
    return out;
}

template <typename Prog>
inline AtomSet mheadset(const Prog& p, const std::vector<int>& rule_indices) {
    std::vector<AtomId> v;
    for (int i : rule_indices)
        for (const auto& e : p.rules[static_cast<std::size_t>(i)].head.elems)
            v.push_back(e.atom);
    return AtomSet::from_vector(std::move(v));
}

template <typename Prog>
inline bool is_mmodel(const Interpretation& m, const Prog& p) {
    for (const auto& r : p.rules)
        if (satisfies_mbody(m, r.body) && !satisfies_watom(m, r.head))
            return false;
    return true;
}

template <typename Prog>
inline AtomSet at_matoms(const Prog& p) {
    std::vector<AtomId> v;
    for (const auto& r : p.rules) {
        for (const auto& e : r.head.elems)
            v.push_back(e.atom);
        for (const auto& lit : r.body)
            for (const auto& e : lit.constraint.elems)
                v.push_back(e.atom);
    }
    return AtomSet::from_vector(std::move(v));
}

namespace detail {

inline WeightAtom lower_part(const WeightAtom& w) {
    WeightAtom out;
    out.lower = w.effective_lower();
    out.elems = w.elems;
    return out;
}

inline WeightAtom upper_violation(const WeightAtom& w) {
    // (u+1)[elems]: satisfied exactly when w's upper bound is exceeded.
    WeightAtom out;
    out.lower = w.effective_upper() + 1;
    out.elems = w.elems;
    return out;
}

}  // namespace detail

/// Encode a normalized weight-constraint program as a monotone-constraint
/// program. Every rule r yields r' whose head keeps only the lower bound and
/// whose body splits each atom l[e]u into the literal l[e] (when l > 0) and
/// not((u+1)[e]) (when the upper bound can actually be violated). A rule
/// whose head carries an explicit upper bound u additionally yields the
/// guard r'': false :- (u+1)[head elems], bd(r').
inline MProgram mc_transform(const Program& p) {
    MProgram mp;
    mp.atoms = p.atoms;
    for (int i = 0; i < static_cast<int>(p.rules.size()); ++i) {
        const Rule& r = p.rules[static_cast<std::size_t>(i)];
        assert(r.head.is_normal());
        MRule mr;
        mr.origin = i;
        mr.head = r.head.is_falsum() ? WeightAtom::falsum() : detail::lower_part(r.head);
        for (const auto& w : r.body) {
            assert(w.is_normal());
            if (!w.lower_vacuous())
                mr.body.push_back({false, detail::lower_part(w)});
            if (!w.upper_vacuous())
                mr.body.push_back({true, detail::upper_violation(w)});
        }
        mp.rules.push_back(mr);
        if (!r.head.is_falsum() && r.head.upper) {
            MRule guard;
            guard.origin = i;
            guard.head = WeightAtom::falsum();
            guard.body.push_back({false, detail::upper_violation(r.head)});
            for (const auto& lit : mr.body)
                guard.body.push_back(lit);
            mp.rules.push_back(guard);
        }
    }
    return mp;
}

/// Rewrite a monotone-constraint program without default negation: each
/// negated literal not(l[e]) becomes its dual upper-bound atom [e](l-1).
inline Program cc_transform(const MProgram& mp) {
    Program p;
    p.atoms = mp.atoms;
    for (const auto& mr : mp.rules) {
        Rule r;
        r.head = mr.head;
        for (const auto& lit : mr.body) {
            if (!lit.negated) {
                r.body.push_back(lit.constraint);
            } else {
                WeightAtom w;
                w.upper = lit.constraint.effective_lower() - 1;
                w.elems = lit.constraint.elems;
                r.body.push_back(w);
            }
        }
        p.rules.push_back(r);
    }
    return p;
}

inline std::string render_mlit(const MonoLit& lit, const AtomTable& atoms) {
    std::string s = render_watom(lit.constraint, atoms);
    return lit.negated ? "not(" + s + ")" : s;
}

template <typename Prog>
inline std::string render_mrule(const MRule& r, const Prog& p) {
    std::string out = render_watom(r.head, p.atoms);
    if (!r.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += render_mlit(r.body[i], p.atoms);
        }
    }
    out += '.';
    return out;
}

}  // namespace stablepb
