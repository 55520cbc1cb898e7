#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "stablepb/mcprogram.hpp"
#include "stablepb/normalize.hpp"

namespace stablepb {

/// The reduct of mp with respect to m: rules with an m-satisfied negated
/// literal are dropped, the remaining negated literals removed.
inline HornMProgram reduct(const MProgram& mp, const Interpretation& m) {
    HornMProgram hp;
    hp.atoms = mp.atoms;
    for (const auto& r : mp.rules) {
        bool dropped = false;
        MRule hr;
        hr.head = r.head;
        hr.origin = r.origin;
        for (const auto& lit : r.body) {
            if (lit.negated) {
                if (satisfies_watom(m, lit.constraint)) {
                    dropped = true;
                    break;
                }
            } else {
                hr.body.push_back(lit);
            }
        }
        if (!dropped)
            hp.rules.push_back(std::move(hr));
    }
    return hp;
}

inline HornMProgram as_horn(const MProgram& mp) {
    HornMProgram hp;
    hp.atoms = mp.atoms;
    for (const auto& r : mp.rules) {
        for (const auto& lit : r.body)
            if (lit.negated)
                throw std::invalid_argument("program is not Horn");
        hp.rules.push_back(r);
    }
    return hp;
}

/// Can(P, M): the bottom-up fixpoint X_{k+1} = hset(P(X_k)) ∩ M from the
/// empty set. Counter-based: every atom added feeds the residual lower
/// bounds of the body literals it occurs in, and a rule fires once all of
/// its literals are met.
inline Interpretation canonical(const HornMProgram& hp, const Interpretation& m) {
    if (!is_mmodel(m, hp))
        throw std::invalid_argument("canonical: interpretation is not a model");

    struct LitState {
        long long remaining;  // lower bound weight still to be met
    };
    const int nrules = static_cast<int>(hp.rules.size());
    std::vector<std::vector<LitState>> lits(nrules);
    std::vector<int> unmet(nrules, 0);
    // atom -> list of (rule, lit index, weight) occurrences
    struct Occ {
        int rule;
        int lit;
        long long weight;
    };
    std::vector<std::vector<Occ>> occs;
    auto occ_slot = [&](AtomId a) -> std::vector<Occ>& {
        if (static_cast<std::size_t>(a) >= occs.size())
            occs.resize(static_cast<std::size_t>(a) + 1);
        return occs[static_cast<std::size_t>(a)];
    };

    std::vector<int> queue;  // rules ready to fire
    for (int i = 0; i < nrules; ++i) {
        const auto& body = hp.rules[static_cast<std::size_t>(i)].body;
        lits[static_cast<std::size_t>(i)].resize(body.size());
        for (int j = 0; j < static_cast<int>(body.size()); ++j) {
            const WeightAtom& c = body[static_cast<std::size_t>(j)].constraint;
            long long l = c.effective_lower();
            lits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].remaining = l;
            if (l > 0) {
                ++unmet[static_cast<std::size_t>(i)];
                for (const auto& e : c.elems)
                    occ_slot(e.atom).push_back({i, j, e.weight});
            }
        }
        if (unmet[static_cast<std::size_t>(i)] == 0)
            queue.push_back(i);
    }

    Interpretation x;
    std::vector<AtomId> pending;
    auto add_atom = [&](AtomId a) {
        if (!x.contains(a) && m.contains(a)) {
            x.insert(a);
            pending.push_back(a);
        }
    };

    while (!queue.empty() || !pending.empty()) {
        while (!queue.empty()) {
            int r = queue.back();
            queue.pop_back();
            for (const auto& e : hp.rules[static_cast<std::size_t>(r)].head.elems)
                add_atom(e.atom);
        }
        while (!pending.empty()) {
            AtomId a = pending.back();
            pending.pop_back();
            if (static_cast<std::size_t>(a) >= occs.size())
                continue;
            for (const auto& o : occs[static_cast<std::size_t>(a)]) {
                auto& st = lits[static_cast<std::size_t>(o.rule)][static_cast<std::size_t>(o.lit)];
                if (st.remaining <= 0)
                    continue;
                st.remaining -= o.weight;
                if (st.remaining <= 0 && --unmet[static_cast<std::size_t>(o.rule)] == 0)
                    queue.push_back(o.rule);
            }
        }
    }
    return x;
}

/// Reference implementation of Can(P, M) that recomputes the applicable set
/// on every step, for differential testing against the incremental version.
inline Interpretation canonical_naive(const HornMProgram& hp, const Interpretation& m) {
    if (!is_mmodel(m, hp))
        throw std::invalid_argument("canonical: interpretation is not a model");
    Interpretation x;
    for (;;) {
        Interpretation next = mheadset(hp, applicable_mrules(hp, x)).intersect(m);
        if (next == x)
            return x;
        x = next;
    }
}

/// M is a derivable model iff M is a model and M = Can(P, M).
inline bool is_derivable(const HornMProgram& hp, const Interpretation& m) {
    if (!is_mmodel(m, hp))
        return false;
    return canonical(hp, m) == m;
}

/// Supported: a model M with M ⊆ hset(P(M)).
inline bool is_supported(const Program& p, const Interpretation& m) {
    if (!is_model(m, p))
        return false;
    return m.subset_of(headset(p, applicable_rules(p, m)));
}

struct StabilityReport {
    Interpretation model;
    Interpretation canonical;  // Can(mc(P)^M, M), empty when M is not a model
    Interpretation residue;    // M- = M \ canonical
    bool stable = false;
    bool supported = false;
};

/// Stability of m for the normalized program p, via the monotone-constraint
/// encoding: m is stable iff it is a derivable model of mc(p)^m.
inline StabilityReport stability(const MProgram& mp, const Program& p, const Interpretation& m) {
    StabilityReport rep;
    rep.model = m;
    if (!is_model(m, p)) {
        rep.residue = m;
        return rep;
    }
    rep.supported = is_supported(p, m);
    HornMProgram hp = reduct(mp, m);
    rep.canonical = canonical(hp, m);
    rep.residue = m.minus(rep.canonical);
    rep.stable = rep.canonical == m;
    return rep;
}

inline StabilityReport stability(const Program& p, const Interpretation& m) {
    return stability(mc_transform(p), p, m);
}

inline bool is_stable(const Program& p, const Interpretation& m) {
    return stability(p, m).stable;
}

namespace detail {

inline Interpretation set_from_mask(const std::vector<AtomId>& universe, std::uint32_t mask) {
    std::vector<AtomId> v;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (mask & (1u << i))
            v.push_back(universe[i]);
    return AtomSet::from_vector(std::move(v));
}

}  // namespace detail

/// Exhaustive model enumeration over subsets of At(P). |At(P)| <= 20.
inline std::set<Interpretation> enum_models(const Program& p) {
    AtomSet at = at_atoms(p);
    if (at.size() > 20)
        throw std::length_error("enum_models: more than 20 atoms");
    std::set<Interpretation> out;
    const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
    for (std::uint32_t mask = 0; mask < all; ++mask) {
        Interpretation m = detail::set_from_mask(at.ids(), mask);
        if (is_model(m, p))
            out.insert(m);
    }
    return out;
}

/// Exhaustive supported-model enumeration. |At(P)| <= 16.
inline std::set<Interpretation> enum_supported(const Program& p) {
    AtomSet at = at_atoms(p);
    if (at.size() > 16)
        throw std::length_error("enum_supported: more than 16 atoms");
    std::set<Interpretation> out;
    const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
    for (std::uint32_t mask = 0; mask < all; ++mask) {
        Interpretation m = detail::set_from_mask(at.ids(), mask);
        if (is_supported(p, m))
            out.insert(m);
    }
    return out;
}

/// Exhaustive stable-model enumeration. |At(P)| <= 16.
inline std::set<Interpretation> enum_stable(const Program& p) {
    AtomSet at = at_atoms(p);
    if (at.size() > 16)
        throw std::length_error("enum_stable: more than 16 atoms");
    MProgram mp = mc_transform(p);
    std::set<Interpretation> out;
    const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
    for (std::uint32_t mask = 0; mask < all; ++mask) {
        Interpretation m = detail::set_from_mask(at.ids(), mask);
        if (!is_model(m, p))
            continue;
        HornMProgram hp = reduct(mp, m);
        if (canonical(hp, m) == m)
            out.insert(m);
    }
    return out;
}

}  // namespace stablepb
