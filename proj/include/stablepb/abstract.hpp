#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "stablepb/program.hpp"

namespace stablepb {

/// An explicit constraint (X, C): an ordered domain of at most 16 atoms plus
/// the family of satisfying subsets, stored as bitmasks over domain positions.
/// This is the oracle-side representation; the solving pipeline never expands
/// weight atoms this way.
struct AbstractConstraint {
    std::vector<AtomId> domain;
    std::set<std::uint32_t> satisfiers;

    bool consistent() const { return !satisfiers.empty(); }

    bool operator==(const AbstractConstraint& o) const {
        return domain == o.domain && satisfiers == o.satisfiers;
    }
};

namespace detail {

inline void check_domain_size(const AbstractConstraint& c) {
    if (c.domain.size() > 16)
        throw std::length_error("abstract constraint domain exceeds 16 atoms");
}

inline std::uint32_t mask_of(const AbstractConstraint& c, const Interpretation& m) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < c.domain.size(); ++i)
        if (m.contains(c.domain[i]))
            mask |= 1u << i;
    return mask;
}

}  // namespace detail

/// M satisfies (X, C) iff M ∩ X ∈ C.
inline bool eval(const AbstractConstraint& c, const Interpretation& m) {
    return c.satisfiers.count(detail::mask_of(c, m)) != 0;
}

/// Closed under superset, checked by single-bit extensions.
inline bool is_monotone(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const int n = static_cast<int>(c.domain.size());
    for (std::uint32_t s : c.satisfiers)
        for (int i = 0; i < n; ++i)
            if (!(s & (1u << i)) && c.satisfiers.count(s | (1u << i)) == 0)
                return false;
    return true;
}

/// Closed under subset.
inline bool is_antimonotone(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const int n = static_cast<int>(c.domain.size());
    for (std::uint32_t s : c.satisfiers)
        for (int i = 0; i < n; ++i)
            if ((s & (1u << i)) && c.satisfiers.count(s & ~(1u << i)) == 0)
                return false;
    return true;
}

/// Closed under betweenness: W ⊆ Y ⊆ Z with W, Z satisfiers forces Y in.
/// Deliberately a direct scan of the definition; the closure-based
/// characterization lives in upward_closure/downward_closure and is compared
/// against this in the test suite.
inline bool is_convex(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const std::uint32_t all = c.domain.empty() ? 1u : (1u << c.domain.size());
    for (std::uint32_t y = 0; y < all; ++y) {
        if (c.satisfiers.count(y))
            continue;
        bool has_sub = false, has_sup = false;
        for (std::uint32_t s : c.satisfiers) {
            if ((s & y) == s)
                has_sub = true;
            if ((s & y) == y)
                has_sup = true;
            if (has_sub && has_sup)
                return false;
        }
    }
    return true;
}

/// C+ = {Y ⊆ X : some W ∈ C is contained in Y}.
inline AbstractConstraint upward_closure(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const std::uint32_t all = c.domain.empty() ? 1u : (1u << c.domain.size());
    std::vector<bool> in(all, false);
    for (std::uint32_t s : c.satisfiers)
        in[s] = true;
    for (std::size_t i = 0; i < c.domain.size(); ++i)
        for (std::uint32_t y = 0; y < all; ++y)
            if ((y & (1u << i)) && in[y & ~(1u << i)])
                in[y] = true;
    AbstractConstraint out;
    out.domain = c.domain;
    for (std::uint32_t y = 0; y < all; ++y)
        if (in[y])
            out.satisfiers.insert(y);
    return out;
}

/// C- = {Y ⊆ X : Y is contained in some W ∈ C}.
inline AbstractConstraint downward_closure(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const std::uint32_t all = c.domain.empty() ? 1u : (1u << c.domain.size());
    std::vector<bool> in(all, false);
    for (std::uint32_t s : c.satisfiers)
        in[s] = true;
    for (std::size_t i = 0; i < c.domain.size(); ++i)
        for (std::uint32_t y = all; y-- > 0;)
            if (!(y & (1u << i)) && in[y | (1u << i)])
                in[y] = true;
    AbstractConstraint out;
    out.domain = c.domain;
    for (std::uint32_t y = 0; y < all; ++y)
        if (in[y])
            out.satisfiers.insert(y);
    return out;
}

/// The dual constraint: satisfiers complemented within the powerset.
inline AbstractConstraint dual(const AbstractConstraint& c) {
    detail::check_domain_size(c);
    const std::uint32_t all = c.domain.empty() ? 1u : (1u << c.domain.size());
    AbstractConstraint out;
    out.domain = c.domain;
    for (std::uint32_t y = 0; y < all; ++y)
        if (c.satisfiers.count(y) == 0)
            out.satisfiers.insert(y);
    return out;
}

/// Expand a normalized weight atom into its explicit constraint.
inline AbstractConstraint expand(const WeightAtom& w) {
    if (w.elems.size() > 16)
        throw std::length_error("weight atom too large to expand");
    AbstractConstraint out;
    for (const auto& e : w.elems)
        out.domain.push_back(e.atom);
    const std::uint32_t all = out.domain.empty() ? 1u : (1u << out.domain.size());
    const long long l = w.effective_lower();
    const long long u = w.effective_upper();
    for (std::uint32_t y = 0; y < all; ++y) {
        long long s = 0;
        for (std::size_t i = 0; i < w.elems.size(); ++i)
            if (y & (1u << i))
                s += w.elems[i].weight;
        if (l <= s && s <= u)
            out.satisfiers.insert(y);
    }
    return out;
}

}  // namespace stablepb
