#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "stablepb/atoms.hpp"

namespace stablepb {

/// One weighted literal inside a weight atom. Negated elements exist only
/// before normalization; normalize() eliminates them.
struct WeightedElem {
    AtomId atom = -1;
    bool negated = false;
    long long weight = 1;

    bool operator==(const WeightedElem& o) const {
        return atom == o.atom && negated == o.negated && weight == o.weight;
    }
    bool operator<(const WeightedElem& o) const {
        if (atom != o.atom)
            return atom < o.atom;
        if (negated != o.negated)
            return negated < o.negated;
        return weight < o.weight;
    }
};

/// A weight atom l[a1=w1,...,ak=wk]u. A missing lower bound means 0, a
/// missing upper bound means the weight sum (no constraint). Inconsistent
/// atoms (l > u, or l greater than the weight sum) are legal values.
struct WeightAtom {
    std::optional<long long> lower;
    std::optional<long long> upper;
    std::vector<WeightedElem> elems;

    long long weight_sum() const {
        long long s = 0;
        for (const auto& e : elems)
            s += e.weight;
        return s;
    }

    long long effective_lower() const { return lower.value_or(0); }
    long long effective_upper() const { return upper ? *upper : weight_sum(); }

    bool upper_vacuous() const { return !upper || *upper >= weight_sum(); }
    bool lower_vacuous() const { return effective_lower() <= 0; }

    bool is_normal() const {
        for (const auto& e : elems)
            if (e.negated || e.weight < 0)
                return false;
        return true;
    }

    AtomSet domain() const {
        std::vector<AtomId> v;
        v.reserve(elems.size());
        for (const auto& e : elems)
            v.push_back(e.atom);
        return AtomSet::from_vector(std::move(v));
    }

    bool all_unit_weights() const {
        for (const auto& e : elems)
            if (e.weight != 1)
                return false;
        return true;
    }

    /// The canonical inconsistent constraint: 1 over no elements.
    static WeightAtom falsum() {
        WeightAtom w;
        w.lower = 1;
        return w;
    }

    bool is_falsum() const { return elems.empty() && lower && *lower == 1 && !upper; }

    /// 1{a}
    static WeightAtom unit(AtomId a) {
        WeightAtom w;
        w.lower = 1;
        w.elems.push_back({a, false, 1});
        return w;
    }

    bool is_unit() const {
        return elems.size() == 1 && !elems[0].negated && elems[0].weight == 1 &&
               effective_lower() == 1 && upper_vacuous();
    }

    /// {a}0
    static WeightAtom unit_negation(AtomId a) {
        WeightAtom w;
        w.upper = 0;
        w.elems.push_back({a, false, 1});
        return w;
    }

    /// l{a1,...,ak} over the given atoms.
    static WeightAtom cardinality(long long l, const std::vector<AtomId>& atoms) {
        WeightAtom w;
        w.lower = l;
        for (AtomId a : atoms)
            w.elems.push_back({a, false, 1});
        return w;
    }

    bool operator==(const WeightAtom& o) const {
        return lower == o.lower && upper == o.upper && elems == o.elems;
    }
    bool operator!=(const WeightAtom& o) const { return !(*this == o); }
    bool operator<(const WeightAtom& o) const {
        if (lower != o.lower)
            return lower < o.lower;
        if (upper != o.upper)
            return upper < o.upper;
        return elems < o.elems;
    }
};

/// A rule head <- body. The head "false" is represented by the canonical
/// falsum atom, so every rule carries a plain WeightAtom head.
struct Rule {
    WeightAtom head;
    std::vector<WeightAtom> body;

    bool operator==(const Rule& o) const { return head == o.head && body == o.body; }
};

struct Program {
    std::vector<Rule> rules;
    AtomTable atoms;
};

/// True iff m satisfies the (normalized) weight atom w:
/// l <= sum of weights of elements whose atom is in m <= u.
inline bool satisfies_watom(const Interpretation& m, const WeightAtom& w) {
    assert(w.is_normal());
    long long s = 0;
    for (const auto& e : w.elems)
        if (m.contains(e.atom))
            s += e.weight;
    return w.effective_lower() <= s && s <= w.effective_upper();
}

inline bool satisfies_body(const Interpretation& m, const std::vector<WeightAtom>& body) {
    for (const auto& w : body)
        if (!satisfies_watom(m, w))
            return false;
    return true;
}

/// Indices of the m-applicable rules: those whose body m satisfies.
inline std::vector<int> applicable_rules(const Program& p, const Interpretation& m) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(p.rules.size()); ++i)
        if (satisfies_body(m, p.rules[i].body))
            out.push_back(i);
    return out;
}

/// Union of head domains of the given rules. Falsum heads contribute nothing.
inline AtomSet headset(const Program& p, const std::vector<int>& rule_indices) {
    std::vector<AtomId> v;
    for (int i : rule_indices)
        for (const auto& e : p.rules[static_cast<std::size_t>(i)].head.elems)
            v.push_back(e.atom);
    return AtomSet::from_vector(std::move(v));
}

inline AtomSet headset(const Program& p) {
    std::vector<int> all(p.rules.size());
    for (std::size_t i = 0; i < p.rules.size(); ++i)
        all[i] = static_cast<int>(i);
    return headset(p, all);
}

/// At(P): every atom occurring in a head or body domain.
inline AtomSet at_atoms(const Program& p) {
    std::vector<AtomId> v;
    for (const auto& r : p.rules) {
        for (const auto& e : r.head.elems)
            v.push_back(e.atom);
        for (const auto& w : r.body)
            for (const auto& e : w.elems)
                v.push_back(e.atom);
    }
    return AtomSet::from_vector(std::move(v));
}

/// True iff every m-applicable rule's head is satisfied by m.
inline bool is_model(const Interpretation& m, const Program& p) {
    for (const auto& r : p.rules)
        if (satisfies_body(m, r.body) && !satisfies_watom(m, r.head))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Rendering. parse(render(p)) is structurally the identity.

inline std::string render_watom(const WeightAtom& w, const AtomTable& atoms) {
    if (w.is_falsum())
        return "false";
    std::string out;
    if (w.lower)
        out += std::to_string(*w.lower);
    bool card = w.all_unit_weights();
    out += card ? '{' : '[';
    bool first = true;
    for (const auto& e : w.elems) {
        if (!first)
            out += ',';
        first = false;
        if (e.negated)
            out += "not ";
        out += atoms.name(e.atom);
        if (!card) {
            out += '=';
            out += std::to_string(e.weight);
        }
    }
    out += card ? '}' : ']';
    if (w.upper)
        out += std::to_string(*w.upper);
    return out;
}

inline std::string render_rule(const Rule& r, const AtomTable& atoms) {
    std::string out = render_watom(r.head, atoms);
    if (!r.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += render_watom(r.body[i], atoms);
        }
    }
    out += '.';
    return out;
}

inline std::string render_program(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        out += render_rule(r, p.atoms);
        out += '\n';
    }
    return out;
}

}  // namespace stablepb
