#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablepb/program.hpp"

namespace stablepb {

struct GenParams {
    int n = 0;
    int m = 0;
    int k = 0;
    int maxw = 9;
    long long bound = -1;
    int disks = 0;
    int steps = 0;
    unsigned seed = 0;
};

namespace detail {

// rng() % k is biased in general but deterministic across platforms, which
// is what the seeded instances need.
inline int rand_int(std::mt19937& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

struct GenBuilder {
    Program p;

    AtomId atom(const std::string& name) { return p.atoms.intern(name); }

    void fact(const WeightAtom& head) { p.rules.push_back({head, {}}); }

    void rule(const WeightAtom& head, std::vector<WeightAtom> body) {
        p.rules.push_back({head, std::move(body)});
    }

    void forbid(std::vector<WeightAtom> body) {
        p.rules.push_back({WeightAtom::falsum(), std::move(body)});
    }

    static WeightAtom exactly_one(const std::vector<AtomId>& atoms) {
        WeightAtom w = WeightAtom::cardinality(1, atoms);
        w.upper = 1;
        return w;
    }

    static WeightAtom at_least(long long l, const std::vector<AtomId>& atoms) {
        return WeightAtom::cardinality(l, atoms);
    }

    static WeightAtom none_of(const std::vector<AtomId>& atoms) {
        WeightAtom w = WeightAtom::cardinality(0, atoms);
        w.lower.reset();
        w.upper = 0;
        return w;
    }

    static WeightAtom weighted_at_least(long long l,
                                        const std::vector<std::pair<AtomId, long long>>& elems) {
        WeightAtom w;
        w.lower = l;
        for (const auto& [a, wt] : elems)
            w.elems.push_back({a, false, wt});
        return w;
    }

    static WeightAtom choice(const std::vector<AtomId>& atoms) {
        WeightAtom w = WeightAtom::cardinality(0, atoms);
        w.lower.reset();
        return w;
    }
};

inline Program gen_magic_square(const GenParams& prm) {
    const int n = prm.n;
    if (n < 1)
        throw std::invalid_argument("magic-square: n must be positive");
    const int cells = n * n;
    const long long target = static_cast<long long>(n) * (cells + 1) / 2;
    GenBuilder b;
    auto cell_atom = [&](int i, int j, int v) {
        return b.atom("x_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(v));
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::vector<AtomId> vals;
            for (int v = 1; v <= cells; ++v)
                vals.push_back(cell_atom(i, j, v));
            b.fact(GenBuilder::exactly_one(vals));
        }
    for (int v = 1; v <= cells; ++v) {
        std::vector<AtomId> uses;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                uses.push_back(cell_atom(i, j, v));
        b.forbid({GenBuilder::at_least(2, uses)});
        b.forbid({GenBuilder::none_of(uses)});
    }
    auto line_sum = [&](const std::vector<std::pair<int, int>>& line) {
        std::vector<std::pair<AtomId, long long>> elems;
        for (const auto& [i, j] : line)
            for (int v = 1; v <= cells; ++v)
                elems.push_back({cell_atom(i, j, v), v});
        b.forbid({GenBuilder::weighted_at_least(target + 1, elems)});
        WeightAtom too_low;
        too_low.upper = target - 1;
        for (const auto& [a, w] : elems)
            too_low.elems.push_back({a, false, w});
        b.forbid({too_low});
    };
    for (int i = 1; i <= n; ++i) {
        std::vector<std::pair<int, int>> row, col;
        for (int j = 1; j <= n; ++j) {
            row.push_back({i, j});
            col.push_back({j, i});
        }
        line_sum(row);
        line_sum(col);
    }
    std::vector<std::pair<int, int>> diag, anti;
    for (int i = 1; i <= n; ++i) {
        diag.push_back({i, i});
        anti.push_back({i, n + 1 - i});
    }
    line_sum(diag);
    line_sum(anti);
    return b.p;
}

inline Program gen_vertex_cover(const GenParams& prm) {
    const int n = prm.n, m = prm.m, k = prm.k;
    if (n < 1 || m < 0 || k < 0)
        throw std::invalid_argument("vertex-cover: bad parameters");
    if (static_cast<long long>(m) > static_cast<long long>(n) * (n - 1) / 2)
        throw std::invalid_argument("vertex-cover: too many edges for a simple graph");
    std::mt19937 rng(prm.seed);
    GenBuilder b;
    std::vector<AtomId> in;
    for (int v = 1; v <= n; ++v)
        in.push_back(b.atom("in_" + std::to_string(v)));
    b.fact(GenBuilder::choice(in));
    std::vector<std::pair<int, int>> edges;
    while (static_cast<int>(edges.size()) < m) {
        int u = rand_int(rng, 1, n);
        int v = rand_int(rng, 1, n);
        if (u == v)
            continue;
        if (u > v)
            std::swap(u, v);
        bool dup = false;
        for (const auto& e : edges)
            if (e.first == u && e.second == v)
                dup = true;
        if (!dup)
            edges.push_back({u, v});
    }
    for (const auto& [u, v] : edges)
        b.forbid({GenBuilder::none_of({in[static_cast<std::size_t>(u - 1)],
                                       in[static_cast<std::size_t>(v - 1)]})});
    b.forbid({GenBuilder::at_least(k + 1, in)});
    return b.p;
}

inline Program gen_tsp(const GenParams& prm) {
    const int n = prm.n;
    const int maxw = prm.maxw;
    if (n < 3 || maxw < 1 || prm.bound < 0)
        throw std::invalid_argument("tsp: need n >= 3, maxw >= 1 and a bound");
    std::mt19937 rng(prm.seed);
    GenBuilder b;
    std::vector<std::vector<long long>> w(static_cast<std::size_t>(n + 1),
                                          std::vector<long long>(static_cast<std::size_t>(n + 1), 0));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    rand_int(rng, 1, maxw);
    auto succ = [&](int i, int j) {
        return b.atom("s_" + std::to_string(i) + "_" + std::to_string(j));
    };
    auto reach = [&](int j) { return b.atom("reach_" + std::to_string(j)); };
    for (int i = 1; i <= n; ++i) {
        std::vector<AtomId> out;
        for (int j = 1; j <= n; ++j)
            if (j != i)
                out.push_back(succ(i, j));
        b.fact(GenBuilder::exactly_one(out));
    }
    for (int j = 1; j <= n; ++j) {
        std::vector<AtomId> inc;
        for (int i = 1; i <= n; ++i)
            if (i != j)
                inc.push_back(succ(i, j));
        b.forbid({GenBuilder::at_least(2, inc)});
        b.forbid({GenBuilder::none_of(inc)});
    }
    for (int j = 2; j <= n; ++j)
        b.rule(WeightAtom::unit(reach(j)), {WeightAtom::unit(succ(1, j))});
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= n; ++j)
            if (i != j)
                b.rule(WeightAtom::unit(reach(j)),
                       {WeightAtom::unit(reach(i)), WeightAtom::unit(succ(i, j))});
    for (int j = 2; j <= n; ++j)
        b.forbid({GenBuilder::none_of({reach(j)})});
    std::vector<std::pair<AtomId, long long>> weighted;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                weighted.push_back({succ(i, j), w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    b.forbid({GenBuilder::weighted_at_least(prm.bound + 1, weighted)});
    return b.p;
}

inline Program gen_wnqueens(const GenParams& prm) {
    const int n = prm.n;
    if (n < 1 || prm.maxw < 1 || prm.bound < 0)
        throw std::invalid_argument("wnqueens: need n >= 1, maxw >= 1 and a bound");
    std::mt19937 rng(prm.seed);
    GenBuilder b;
    auto q = [&](int i, int j) {
        return b.atom("q_" + std::to_string(i) + "_" + std::to_string(j));
    };
    std::vector<std::pair<AtomId, long long>> weighted;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            weighted.push_back({q(i, j), rand_int(rng, 1, prm.maxw)});
    for (int i = 1; i <= n; ++i) {
        std::vector<AtomId> row;
        for (int j = 1; j <= n; ++j)
            row.push_back(q(i, j));
        b.fact(GenBuilder::exactly_one(row));
    }
    for (int j = 1; j <= n; ++j) {
        std::vector<AtomId> col;
        for (int i = 1; i <= n; ++i)
            col.push_back(q(i, j));
        b.forbid({GenBuilder::at_least(2, col)});
    }
    for (int d = -(n - 1); d <= n - 1; ++d) {
        std::vector<AtomId> diag, anti;
        for (int i = 1; i <= n; ++i) {
            int j = i - d;
            if (j >= 1 && j <= n)
                diag.push_back(q(i, j));
            int ja = n + 1 - i + d;
            if (ja >= 1 && ja <= n)
                anti.push_back(q(i, ja));
        }
        if (diag.size() >= 2)
            b.forbid({GenBuilder::at_least(2, diag)});
        if (anti.size() >= 2)
            b.forbid({GenBuilder::at_least(2, anti)});
    }
    b.forbid({GenBuilder::weighted_at_least(prm.bound + 1, weighted)});
    return b.p;
}

inline Program gen_wlatin(const GenParams& prm) {
    const int n = prm.n;
    if (n < 1 || prm.maxw < 1 || prm.bound < 0)
        throw std::invalid_argument("wlatin: need n >= 1, maxw >= 1 and a bound");
    std::mt19937 rng(prm.seed);
    GenBuilder b;
    auto cell = [&](int i, int j, int v) {
        return b.atom("l_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(v));
    };
    std::vector<std::pair<AtomId, long long>> weighted;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            long long wij = rand_int(rng, 1, prm.maxw);
            std::vector<AtomId> vals;
            for (int v = 1; v <= n; ++v) {
                vals.push_back(cell(i, j, v));
                weighted.push_back({cell(i, j, v), v * wij});
            }
            b.fact(GenBuilder::exactly_one(vals));
        }
    for (int v = 1; v <= n; ++v) {
        for (int i = 1; i <= n; ++i) {
            std::vector<AtomId> row;
            for (int j = 1; j <= n; ++j)
                row.push_back(cell(i, j, v));
            b.forbid({GenBuilder::at_least(2, row)});
            b.forbid({GenBuilder::none_of(row)});
        }
        for (int j = 1; j <= n; ++j) {
            std::vector<AtomId> col;
            for (int i = 1; i <= n; ++i)
                col.push_back(cell(i, j, v));
            b.forbid({GenBuilder::at_least(2, col)});
            b.forbid({GenBuilder::none_of(col)});
        }
    }
    b.forbid({GenBuilder::weighted_at_least(prm.bound + 1, weighted)});
    return b.p;
}

inline Program gen_hanoi(const GenParams& prm) {
    const int d = prm.disks, t = prm.steps;
    if (d < 1 || t < 0)
        throw std::invalid_argument("hanoi: need at least one disk and steps >= 0");
    GenBuilder b;
    auto on = [&](int disk, int peg, int time) {
        return b.atom("on_" + std::to_string(disk) + "_" + std::to_string(peg) + "_" +
                      std::to_string(time));
    };
    auto mv = [&](int disk, int peg, int time) {
        return b.atom("move_" + std::to_string(disk) + "_" + std::to_string(peg) + "_" +
                      std::to_string(time));
    };
    auto moved = [&](int disk, int time) {
        return b.atom("moved_" + std::to_string(disk) + "_" + std::to_string(time));
    };
    for (int disk = 1; disk <= d; ++disk)
        b.fact(WeightAtom::unit(on(disk, 1, 0)));
    for (int time = 1; time <= t; ++time) {
        std::vector<AtomId> moves;
        for (int disk = 1; disk <= d; ++disk)
            for (int peg = 1; peg <= 3; ++peg)
                moves.push_back(mv(disk, peg, time));
        b.fact(GenBuilder::exactly_one(moves));
        for (int disk = 1; disk <= d; ++disk) {
            for (int peg = 1; peg <= 3; ++peg) {
                // A move must change the peg.
                b.forbid({WeightAtom::unit(mv(disk, peg, time)),
                          WeightAtom::unit(on(disk, peg, time - 1))});
                // The moved disk must be on top of its source peg.
                for (int smaller = 1; smaller < disk; ++smaller)
                    for (int src = 1; src <= 3; ++src)
                        b.forbid({WeightAtom::unit(mv(disk, peg, time)),
                                  WeightAtom::unit(on(disk, src, time - 1)),
                                  WeightAtom::unit(on(smaller, src, time - 1))});
                // The target peg must not hold a smaller disk.
                for (int smaller = 1; smaller < disk; ++smaller)
                    b.forbid({WeightAtom::unit(mv(disk, peg, time)),
                              WeightAtom::unit(on(smaller, peg, time - 1))});
                b.rule(WeightAtom::unit(on(disk, peg, time)),
                       {WeightAtom::unit(mv(disk, peg, time))});
                b.rule(WeightAtom::unit(moved(disk, time)),
                       {WeightAtom::unit(mv(disk, peg, time))});
                b.rule(WeightAtom::unit(on(disk, peg, time)),
                       {WeightAtom::unit(on(disk, peg, time - 1)),
                        WeightAtom::unit_negation(moved(disk, time))});
            }
        }
    }
    for (int disk = 1; disk <= d; ++disk)
        b.forbid({GenBuilder::none_of({on(disk, 3, t)})});
    return b.p;
}

}  // namespace detail

/// Deterministic ground instances whose stable models encode the problem's
/// solutions. Kinds: magic-square{n}, vertex-cover{n,m,k,seed},
/// tsp{n,maxw,bound,seed}, wnqueens{n,bound,seed}, wlatin{n,bound,seed},
/// hanoi{disks,steps}.
inline Program generate(const std::string& kind, const GenParams& prm) {
    if (kind == "magic-square")
        return detail::gen_magic_square(prm);
    if (kind == "vertex-cover")
        return detail::gen_vertex_cover(prm);
    if (kind == "tsp")
        return detail::gen_tsp(prm);
    if (kind == "wnqueens")
        return detail::gen_wnqueens(prm);
    if (kind == "wlatin")
        return detail::gen_wlatin(prm);
    if (kind == "hanoi")
        return detail::gen_hanoi(prm);
    throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace stablepb
