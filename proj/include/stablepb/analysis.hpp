#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "stablepb/mcprogram.hpp"

namespace stablepb {

struct Digraph {
    AtomSet vertices;
    std::map<AtomId, AtomSet> edges;  // u -> successors

    void add_vertex(AtomId v) { vertices.insert(v); }

    void add_edge(AtomId u, AtomId v) {
        vertices.insert(u);
        vertices.insert(v);
        edges[u].insert(v);
    }

    const AtomSet& successors(AtomId u) const {
        static const AtomSet none;
        auto it = edges.find(u);
        return it == edges.end() ? none : it->second;
    }
};

/// A nonempty atom set inducing a strongly connected subgraph. Singletons
/// qualify, with or without a self-edge.
using Loop = AtomSet;

/// Positive dependency graph of a normalized program, computed over its
/// monotone-constraint encoding: an edge u -> v for every rule with u in the
/// head domain and v in the domain of a non-negated body literal.
inline Digraph dependency_graph(const MProgram& mp, const AtomSet& vertices) {
    Digraph g;
    g.vertices = vertices;
    for (const auto& r : mp.rules) {
        for (const auto& he : r.head.elems) {
            for (const auto& lit : r.body) {
                if (lit.negated)
                    continue;
                for (const auto& be : lit.constraint.elems)
                    g.add_edge(he.atom, be.atom);
            }
        }
    }
    return g;
}

inline Digraph dependency_graph(const Program& p) {
    return dependency_graph(mc_transform(p), at_atoms(p));
}

inline Digraph induced(const Digraph& g, const AtomSet& s) {
    Digraph out;
    out.vertices = g.vertices.intersect(s);
    for (AtomId u : out.vertices)
        for (AtomId v : g.successors(u))
            if (out.vertices.contains(v))
                out.edges[u].insert(v);
    return out;
}

/// Tarjan's strongly connected components; every vertex lands in exactly one
/// component, singletons included. Components come out in reverse
/// topological order of the condensation.
inline std::vector<AtomSet> sccs(const Digraph& g) {
    std::map<AtomId, int> index, low;
    std::map<AtomId, bool> on_stack;
    std::vector<AtomId> stack;
    std::vector<AtomSet> out;
    int counter = 0;

    struct Frame {
        AtomId v;
        std::vector<AtomId> succ;
        std::size_t next = 0;
    };
    for (AtomId root : g.vertices) {
        if (index.count(root))
            continue;
        std::vector<Frame> frames;
        frames.push_back({root, {g.successors(root).begin(), g.successors(root).end()}});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < f.succ.size()) {
                AtomId w = f.succ[f.next++];
                if (!index.count(w)) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, {g.successors(w).begin(), g.successors(w).end()}});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    AtomSet comp;
                    AtomId w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.insert(w);
                    } while (w != f.v);
                    out.push_back(std::move(comp));
                }
                AtomId v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return out;
}

/// Maximal loops are exactly the vertex sets of strongly connected components.
inline std::vector<Loop> maximal_loops(const Digraph& g) { return sccs(g); }

/// Terminating loops: maximal loops with no edge to a different maximal loop.
inline std::vector<Loop> terminating_loops(const Digraph& g) {
    std::vector<Loop> comps = sccs(g);
    std::map<AtomId, int> comp_of;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        for (AtomId v : comps[static_cast<std::size_t>(i)])
            comp_of[v] = i;
    std::vector<Loop> out;
    for (const auto& comp : comps) {
        bool sink = true;
        for (AtomId u : comp) {
            for (AtomId v : g.successors(u)) {
                if (!comp.contains(v)) {
                    sink = false;
                    break;
                }
            }
            if (!sink)
                break;
        }
        if (sink)
            out.push_back(comp);
    }
    return out;
}

namespace detail {

inline bool strongly_connected_subset(const Digraph& g, const std::vector<AtomId>& verts,
                                      std::uint32_t mask) {
    // BFS forward and backward from the first member, staying inside mask.
    int first = -1;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
        if (mask & (1u << i)) {
            first = i;
            break;
        }
    if (first < 0)
        return false;
    std::map<AtomId, int> pos;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
        pos[verts[static_cast<std::size_t>(i)]] = i;
    for (int dir = 0; dir < 2; ++dir) {
        std::uint32_t reached = 1u << first;
        std::vector<int> work{first};
        while (!work.empty()) {
            int u = work.back();
            work.pop_back();
            for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
                if (!(mask & (1u << v)) || (reached & (1u << v)))
                    continue;
                AtomId ua = verts[static_cast<std::size_t>(u)];
                AtomId va = verts[static_cast<std::size_t>(v)];
                bool edge = dir == 0 ? g.successors(ua).contains(va)
                                     : g.successors(va).contains(ua);
                if (edge) {
                    reached |= 1u << v;
                    work.push_back(v);
                }
            }
        }
        if (reached != mask)
            return false;
    }
    return true;
}

}  // namespace detail

/// Every nonempty vertex subset whose induced subgraph is strongly connected.
/// Exponential by nature; capped at 12 vertices.
inline std::vector<Loop> all_loops(const Digraph& g) {
    if (g.vertices.size() > 12)
        throw std::length_error("all_loops: more than 12 vertices");
    const std::vector<AtomId>& verts = g.vertices.ids();
    std::vector<Loop> out;
    const std::uint32_t all = verts.empty() ? 1u : (1u << verts.size());
    for (std::uint32_t mask = 1; mask < all; ++mask) {
        if (__builtin_popcount(mask) == 1 ||
            detail::strongly_connected_subset(g, verts, mask)) {
            std::vector<AtomId> v;
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (mask & (1u << i))
                    v.push_back(verts[i]);
            out.push_back(AtomSet::from_vector(std::move(v)));
        }
    }
    return out;
}

/// Tightness of p on m: a level mapping exists iff the head-to-positive-body
/// relevance graph over the m-applicable rules is acyclic.
inline bool tight_on(const MProgram& mp, const Interpretation& m) {
    Digraph h;
    h.vertices = m;
    for (const auto& r : mp.rules) {
        if (!satisfies_mbody(m, r.body))
            continue;
        std::vector<AtomId> heads, bodies;
        for (const auto& e : r.head.elems)
            if (m.contains(e.atom))
                heads.push_back(e.atom);
        for (const auto& lit : r.body) {
            if (lit.negated)
                continue;
            for (const auto& e : lit.constraint.elems)
                if (m.contains(e.atom))
                    bodies.push_back(e.atom);
        }
        for (AtomId x : heads)
            for (AtomId a : bodies)
                h.add_edge(x, a);
    }
    // Acyclic iff every SCC is a singleton without a self-edge.
    for (const auto& comp : sccs(h)) {
        if (comp.size() > 1)
            return false;
        AtomId v = *comp.begin();
        if (h.successors(v).contains(v))
            return false;
    }
    return true;
}

inline bool tight_on(const Program& p, const Interpretation& m) {
    return tight_on(mc_transform(p), m);
}

}  // namespace stablepb
