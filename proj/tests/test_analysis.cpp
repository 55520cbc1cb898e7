#include <catch2/catch_amalgamated.hpp>

#include "stablepb/analysis.hpp"
#include "testutil.hpp"

using namespace stablepb;
using testutil::mask_set;

namespace {

std::set<AtomSet> loop_set(const std::vector<Loop>& loops) {
    return {loops.begin(), loops.end()};
}

}  // namespace

TEST_CASE("dependency graph edges come from positive literals only") {
    Program p = parse_program("1{a} :- 1{b}. 1{b} :- 1{a}.");
    Digraph g = dependency_graph(p);
    AtomId a = p.atoms.id_of("a"), b = p.atoms.id_of("b");
    REQUIRE(g.successors(a) == AtomSet{b});
    REQUIRE(g.successors(b) == AtomSet{a});

    Program q = parse_program("1{a} :- {b}0.");
    Digraph gq = dependency_graph(q);
    REQUIRE(gq.successors(q.atoms.id_of("a")).empty());
    REQUIRE(gq.vertices.size() == 2);

    REQUIRE(dependency_graph(Program{}).vertices.empty());
}

TEST_CASE("zero lower bounds contribute no edges") {
    Program p = parse_program("1{a} :- 0{b}2.");
    Digraph g = dependency_graph(p);
    REQUIRE(g.successors(p.atoms.id_of("a")).empty());
}

TEST_CASE("sccs, maximal and terminating loops") {
    Digraph g;
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_vertex(2);
    REQUIRE(loop_set(maximal_loops(g)) == std::set<AtomSet>{AtomSet{0, 1}, AtomSet{2}});
    REQUIRE(loop_set(terminating_loops(g)) == std::set<AtomSet>{AtomSet{0, 1}, AtomSet{2}});

    Digraph chain;
    chain.add_edge(0, 1);
    REQUIRE(loop_set(terminating_loops(chain)) == std::set<AtomSet>{AtomSet{1}});

    Digraph single;
    single.add_vertex(5);
    REQUIRE(loop_set(terminating_loops(single)) == std::set<AtomSet>{AtomSet{5}});
}

TEST_CASE("all loops") {
    Digraph g;
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    REQUIRE(loop_set(all_loops(g)) == std::set<AtomSet>{AtomSet{0}, AtomSet{1}, AtomSet{0, 1}});

    Digraph edgeless;
    edgeless.add_vertex(0);
    edgeless.add_vertex(1);
    REQUIRE(loop_set(all_loops(edgeless)) == std::set<AtomSet>{AtomSet{0}, AtomSet{1}});

    Digraph tri;
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(2, 0);
    REQUIRE(loop_set(all_loops(tri)) ==
            std::set<AtomSet>{AtomSet{0}, AtomSet{1}, AtomSet{2}, AtomSet{0, 1, 2}});
}

TEST_CASE("induced subgraph") {
    Digraph g;
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(1, 2);
    Digraph h = induced(g, AtomSet{0, 1});
    REQUIRE(h.vertices == AtomSet{0, 1});
    REQUIRE(h.successors(1) == AtomSet{0});
    REQUIRE(induced(g, AtomSet{}).vertices.empty());

    // every loop of an induced subgraph is a loop of the original
    for (const Loop& l : all_loops(h)) {
        bool found = false;
        for (const Loop& l2 : all_loops(g))
            if (l == l2)
                found = true;
        REQUIRE(found);
    }
}

TEST_CASE("tightness") {
    Program p1 = parse_program("1{a} :- 1{a}.");
    REQUIRE_FALSE(tight_on(p1, AtomSet{p1.atoms.id_of("a")}));
    REQUIRE(tight_on(p1, AtomSet{}));

    Program p2 = parse_program("1{a}. 1{b} :- 1{a}.");
    REQUIRE(tight_on(p2, AtomSet{p2.atoms.id_of("a"), p2.atoms.id_of("b")}));

    // non-applicable rules do not constrain the level mapping
    Program p3 = parse_program("1{a} :- 1{a}, 1{b}.");
    REQUIRE(tight_on(p3, AtomSet{p3.atoms.id_of("a")}));
}

TEST_CASE("every nonempty graph has a terminating loop") {
    std::mt19937 rng(53);
    for (int i = 0; i < 500; ++i) {
        int n = testutil::rnd(rng, 1, 7);
        Digraph g;
        for (int v = 0; v < n; ++v)
            g.add_vertex(v);
        int edges = testutil::rnd(rng, 0, n * n);
        for (int e = 0; e < edges; ++e)
            g.add_edge(testutil::rnd(rng, 0, n - 1), testutil::rnd(rng, 0, n - 1));
        std::vector<Loop> term = terminating_loops(g);
        REQUIRE_FALSE(term.empty());
        // maximal loops partition the vertex set
        std::vector<Loop> comps = maximal_loops(g);
        std::size_t total = 0;
        for (const auto& c : comps)
            total += c.size();
        REQUIRE(total == g.vertices.size());
        // terminating ⊆ maximal
        for (const auto& t : term) {
            bool found = false;
            for (const auto& c : comps)
                if (t == c)
                    found = true;
            REQUIRE(found);
        }
    }
}

TEST_CASE("programs tight on all supported models have no extra supported models") {
    std::mt19937 rng(149);
    testutil::RandomProgramOptions opt;
    opt.num_atoms = 5;
    int tight_programs = 0;
    for (int i = 0; i < 400; ++i) {
        Program p = testutil::random_program(rng, opt);
        MProgram mp = mc_transform(p);
        bool tight_everywhere = true;
        for (const auto& m : enum_supported(p))
            if (!tight_on(mp, m))
                tight_everywhere = false;
        if (tight_everywhere) {
            ++tight_programs;
            REQUIRE(enum_supported(p) == enum_stable(p));
        }
    }
    REQUIRE(tight_programs > 0);
}

TEST_CASE("Fages: supported and tight implies stable") {
    std::mt19937 rng(59);
    testutil::RandomProgramOptions opt;
    opt.num_atoms = 6;
    for (int i = 0; i < 300; ++i) {
        Program p = testutil::random_program(rng, opt);
        MProgram mp = mc_transform(p);
        AtomSet at = at_atoms(p);
        const std::uint32_t all = at.empty() ? 1u : (1u << at.size());
        for (std::uint32_t mask = 0; mask < all; ++mask) {
            Interpretation m = mask_set(at.ids(), mask);
            if (is_supported(p, m) && tight_on(mp, m))
                REQUIRE(stability(mp, p, m).stable);
        }
    }
}
