#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stablepb/semantics.hpp"

namespace stablepb {

struct SEPair {
    Interpretation x;
    Interpretation y;

    bool operator==(const SEPair& o) const { return x == o.x && y == o.y; }
    bool operator<(const SEPair& o) const { return x != o.x ? x < o.x : y < o.y; }
};

struct EquivVerdict {
    bool equivalent = false;
    std::optional<SEPair> witness;   // a pair in exactly one of the two SE/UE sets
    bool witness_in_first = false;   // true when the witness belongs to the first program
    std::optional<Program> context;  // a context program with differing stable models
    std::string diagnostic;
};

/// N is an M-maximal model of the Horn program hp: N ⊆ M, N a model, and
/// every N-applicable rule already contributes all of its M-atoms to N.
inline bool is_m_maximal(const HornMProgram& hp, const Interpretation& m, const Interpretation& n) {
    if (!n.subset_of(m) || !is_mmodel(n, hp))
        return false;
    return m.intersect(mheadset(hp, applicable_mrules(hp, n))).subset_of(n);
}

/// SE-model test: x ⊆ y, y a model of p, and x an y-maximal model of the
/// reduct of mc(p) with respect to y.
inline bool is_se_model(const Program& p, const SEPair& pair) {
    if (!pair.x.subset_of(pair.y) || !is_model(pair.y, p))
        return false;
    return is_m_maximal(reduct(mc_transform(p), pair.y), pair.y, pair.x);
}

/// All SE-models over subsets of the given universe. |universe| <= 16.
inline std::set<SEPair> se_models(const Program& p, const AtomSet& universe) {
    if (universe.size() > 16)
        throw std::length_error("se_models: universe larger than 16 atoms");
    MProgram mp = mc_transform(p);
    std::set<SEPair> out;
    const std::vector<AtomId>& ids = universe.ids();
    const std::uint32_t all = ids.empty() ? 1u : (1u << ids.size());
    for (std::uint32_t ymask = 0; ymask < all; ++ymask) {
        Interpretation y = detail::set_from_mask(ids, ymask);
        if (!is_model(y, p))
            continue;
        HornMProgram hp = reduct(mp, y);
        // Submask walk over x ⊆ y.
        std::uint32_t xmask = ymask;
        for (;;) {
            Interpretation x = detail::set_from_mask(ids, xmask);
            if (is_m_maximal(hp, y, x))
                out.insert({x, y});
            if (xmask == 0)
                break;
            xmask = (xmask - 1) & ymask;
        }
    }
    return out;
}

/// UE-models: SE-models (x, y) maximal in the sense that any SE-model
/// (x', y) with x ⊆ x' has x' = x or x' = y.
inline std::set<SEPair> ue_models(const Program& p, const AtomSet& universe) {
    std::set<SEPair> se = se_models(p, universe);
    std::set<SEPair> out;
    for (const auto& pr : se) {
        bool maximal = true;
        for (const auto& other : se) {
            if (other.y != pr.y || !pr.x.subset_of(other.x))
                continue;
            if (other.x != pr.x && other.x != pr.y) {
                maximal = false;
                break;
            }
        }
        if (maximal)
            out.insert(pr);
    }
    return out;
}

namespace detail {

/// Rule (S, {S}) <- , rendered with the cardinality atom |S|{S}.
inline Rule fact_rule(const AtomSet& s) {
    Rule r;
    r.head = WeightAtom::cardinality(static_cast<long long>(s.size()), s.ids());
    return r;
}

inline Program with_extra_rules(const Program& p, const std::vector<Rule>& extra) {
    Program out = p;
    for (const auto& r : extra)
        out.rules.push_back(r);
    return out;
}

/// The context that separates stable models once SE-sets differ: for a
/// witness (x, y) that is an SE-model of one program but not of the other
/// (call the latter B), R = { (x,{x}) <- ; (y,{y}) <- (x',{x'}) } with
/// x' = (hset(B^y(x)) ∩ y) \ x. Under R, y becomes stable for B but not
/// for the program carrying the witness.
inline std::optional<std::vector<Rule>> witness_context(const Program& b, const SEPair& w) {
    if (!is_model(w.y, b)) {
        return std::vector<Rule>{fact_rule(w.y)};
    }
    HornMProgram hp = reduct(mc_transform(b), w.y);
    AtomSet xprime =
        mheadset(hp, applicable_mrules(hp, w.x)).intersect(w.y).minus(w.x);
    if (xprime.empty())
        return std::nullopt;
    Rule second;
    second.head = WeightAtom::cardinality(static_cast<long long>(w.y.size()), w.y.ids());
    second.body.push_back(
        WeightAtom::cardinality(static_cast<long long>(xprime.size()), xprime.ids()));
    return std::vector<Rule>{fact_rule(w.x), second};
}

}  // namespace detail

/// Strong equivalence via SE-set comparison over At(p) ∪ At(q); both
/// programs must share one atom table. On inequality the verdict carries an
/// SE-model witness and, when the separating construction succeeds, a
/// context program R with enum_stable(p ∪ R) != enum_stable(q ∪ R).
inline EquivVerdict strongly_equivalent(const Program& p, const Program& q) {
    AtomSet universe = at_atoms(p).unioned(at_atoms(q));
    std::set<SEPair> sp = se_models(p, universe);
    std::set<SEPair> sq = se_models(q, universe);
    EquivVerdict v;
    if (sp == sq) {
        v.equivalent = true;
        return v;
    }
    SEPair w;
    const Program* other = nullptr;
    bool in_first = true;
    for (const auto& pr : sp)
        if (!sq.count(pr)) {
            w = pr;
            other = &q;
            break;
        }
    if (!other) {
        for (const auto& pr : sq)
            if (!sp.count(pr)) {
                w = pr;
                other = &p;
                in_first = false;
                break;
            }
    }
    v.witness = w;
    v.witness_in_first = in_first;
    auto ctx = detail::witness_context(*other, w);
    if (ctx) {
        Program pr = detail::with_extra_rules(p, *ctx);
        Program qr = detail::with_extra_rules(q, *ctx);
        if (enum_stable(pr) != enum_stable(qr)) {
            Program r;
            r.atoms = p.atoms;
            r.rules = *ctx;
            v.context = std::move(r);
        } else {
            v.diagnostic = "constructed context failed to distinguish; SE-witness only";
        }
    } else {
        v.diagnostic = "context construction degenerate; SE-witness only";
    }
    return v;
}

/// Uniform equivalence via UE-set comparison; on inequality searches fact
/// contexts r_D = (D,{D}) <- over D ⊆ At(p) ∪ At(q) for one with differing
/// stable models.
inline EquivVerdict uniformly_equivalent(const Program& p, const Program& q) {
    AtomSet universe = at_atoms(p).unioned(at_atoms(q));
    std::set<SEPair> up = ue_models(p, universe);
    std::set<SEPair> uq = ue_models(q, universe);
    EquivVerdict v;
    if (up == uq) {
        v.equivalent = true;
        return v;
    }
    for (const auto& pr : up)
        if (!uq.count(pr)) {
            v.witness = pr;
            v.witness_in_first = true;
            break;
        }
    if (!v.witness) {
        for (const auto& pr : uq)
            if (!up.count(pr)) {
                v.witness = pr;
                v.witness_in_first = false;
                break;
            }
    }
    const std::vector<AtomId>& ids = universe.ids();
    const std::uint32_t all = ids.empty() ? 1u : (1u << ids.size());
    for (std::uint32_t mask = 0; mask < all; ++mask) {
        AtomSet d = detail::set_from_mask(ids, mask);
        std::vector<Rule> ctx{detail::fact_rule(d)};
        Program pr = detail::with_extra_rules(p, ctx);
        Program qr = detail::with_extra_rules(q, ctx);
        if (enum_stable(pr) != enum_stable(qr)) {
            Program r;
            r.atoms = p.atoms;
            r.rules = ctx;
            v.context = std::move(r);
            break;
        }
    }
    if (!v.context)
        v.diagnostic = "no fact context over the shared atoms distinguishes; UE-witness only";
    return v;
}

/// Put two independently parsed programs onto one shared atom table, the
/// precondition for comparing or combining them.
inline std::pair<Program, Program> share_table(const Program& p, const Program& q);

/// Re-intern q's atoms into table so two independently parsed programs can
/// be compared or combined.
inline Program rebase(const Program& q, AtomTable& table) {
    Program out;
    std::vector<AtomId> remap(static_cast<std::size_t>(q.atoms.size()));
    for (int i = 0; i < q.atoms.size(); ++i)
        remap[static_cast<std::size_t>(i)] = table.intern(q.atoms.name(i));
    auto fix_watom = [&](WeightAtom w) {
        for (auto& e : w.elems)
            e.atom = remap[static_cast<std::size_t>(e.atom)];
        return w;
    };
    for (const auto& r : q.rules) {
        Rule nr;
        nr.head = fix_watom(r.head);
        for (const auto& w : r.body)
            nr.body.push_back(fix_watom(w));
        out.rules.push_back(std::move(nr));
    }
    out.atoms = table;
    return out;
}

inline std::pair<Program, Program> share_table(const Program& p, const Program& q) {
    AtomTable table = p.atoms;
    Program q2 = rebase(q, table);
    Program p2 = p;
    p2.atoms = table;
    return {p2, q2};
}

}  // namespace stablepb
