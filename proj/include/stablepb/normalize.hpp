#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stablepb/program.hpp"

namespace stablepb {

struct NormalizeResult {
    Program program;
    /// Fresh atom -> the source atom it stands for (aux holds iff source is false).
    std::map<AtomId, AtomId> aux_to_source;
    std::map<AtomId, AtomId> source_to_aux;

    AtomSet aux_atoms() const {
        AtomSet s;
        for (const auto& [aux, src] : aux_to_source)
            s.insert(aux);
        return s;
    }
};

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow on bound shift");
    return r;
}

/// Merge elements that agree on (atom, sign) by summing weights, keeping
/// first-occurrence order.
inline void merge_elems(std::vector<WeightedElem>& elems) {
    std::vector<WeightedElem> out;
    for (const auto& e : elems) {
        bool merged = false;
        for (auto& o : out) {
            if (o.atom == e.atom && o.negated == e.negated) {
                o.weight = checked_add(o.weight, e.weight);
                merged = true;
                break;
            }
        }
        if (!merged)
            out.push_back(e);
    }
    elems = std::move(out);
}

}  // namespace detail

/// Rewrite p into the non-negative, positive-literal normal form:
///   (a) an element with weight w < 0 flips sign and becomes weight -w,
///       with both bounds raised by -w;
///   (b) each remaining negated element not(a)=v is replaced by a fresh
///       atom __aux_a=v defined by the appended rule 1{__aux_a} :- {a}0.
/// Duplicate elements are merged by weight summation.
inline NormalizeResult normalize(const Program& p) {
    NormalizeResult res;
    res.program.atoms = p.atoms;
    AtomTable& table = res.program.atoms;

    auto aux_for = [&](AtomId src) {
        auto it = res.source_to_aux.find(src);
        if (it != res.source_to_aux.end())
            return it->second;
        AtomId aux = table.intern("__aux_" + table.name(src));
        res.source_to_aux.emplace(src, aux);
        res.aux_to_source.emplace(aux, src);
        return aux;
    };

    auto normalize_watom = [&](WeightAtom w) {
        detail::merge_elems(w.elems);
        bool has_negative_weight = false;
        for (const auto& e : w.elems)
            if (e.weight < 0)
                has_negative_weight = true;
        if (has_negative_weight) {
            // Materialize missing bounds against the achievable weight range
            // before shifting, so the shift arithmetic stays exact.
            long long min_sum = 0, max_sum = 0, shift = 0;
            for (const auto& e : w.elems) {
                if (e.weight < 0) {
                    min_sum = detail::checked_add(min_sum, e.weight);
                    shift = detail::checked_add(shift, -e.weight);
                } else {
                    max_sum = detail::checked_add(max_sum, e.weight);
                }
            }
            long long l0 = w.lower ? *w.lower : min_sum;
            long long u0 = w.upper ? *w.upper : max_sum;
            for (auto& e : w.elems) {
                if (e.weight < 0) {
                    e.negated = !e.negated;
                    e.weight = -e.weight;
                }
            }
            long long l1 = detail::checked_add(l0, shift);
            w.lower = l1 < 0 ? 0 : l1;
            w.upper = detail::checked_add(u0, shift);
            detail::merge_elems(w.elems);
        }
        for (auto& e : w.elems) {
            if (e.negated) {
                e.atom = aux_for(e.atom);
                e.negated = false;
            }
        }
        detail::merge_elems(w.elems);
        return w;
    };

    for (const auto& r : p.rules) {
        Rule nr;
        nr.head = normalize_watom(r.head);
        for (const auto& w : r.body)
            nr.body.push_back(normalize_watom(w));
        res.program.rules.push_back(std::move(nr));
    }

    // Defining rules for the fresh atoms, in creation order.
    std::vector<std::pair<AtomId, AtomId>> defs(res.aux_to_source.begin(), res.aux_to_source.end());
    std::sort(defs.begin(), defs.end());
    for (const auto& [aux, src] : defs) {
        Rule def;
        def.head = WeightAtom::unit(aux);
        def.body.push_back(WeightAtom::unit_negation(src));
        res.program.rules.push_back(std::move(def));
    }
    return res;
}

}  // namespace stablepb
