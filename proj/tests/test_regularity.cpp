#include "doctest.h"

#include <sstream>

#include "ordtest/io.hpp"
#include "ordtest/regularity.hpp"
#include "ordtest/rng.hpp"

using namespace ordtest;

namespace {

OrderedGraph bipartite_block(int base_color) {
    // 16 vertices; colors within sides arbitrary (0), cross edges base_color
    OrderedGraph g = make_graph(Alphabet::binary(), 16,
                                std::vector<int>(binom2(16), 0));
    for (int u = 0; u < 8; ++u)
        for (int v = 8; v < 16; ++v) g.color(u, v) = base_color;
    return g;
}

std::vector<int> range_vec(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v < hi; ++v) out.push_back(v);
    return out;
}

} // namespace

TEST_CASE("sigma density examples") {
    Alphabet xy({"x", "y"});
    OrderedGraph g = make_graph(xy, 3, {0, 0, 1}); // c(1,3)=x? pairs: (1,2),(1,3),(2,3)
    // A = {1,2}, B = {3} with c(1,3)=x, c(2,3)=y
    g.color(0, 2) = 0;
    g.color(1, 2) = 1;
    std::vector<int> a{0, 1}, b{2};
    CHECK(sigma_density(g, a, b, 0) == Rat(1, 2));
    CHECK(sigma_density(g, a, b, 1) == Rat(1, 2));
    CHECK(sigma_density(g, a, b, 0) + sigma_density(g, a, b, 1) == Rat(1));

    CHECK_THROWS_AS(sigma_density(g, a, a, 0), parameter_error);
    CHECK_THROWS_AS(sigma_density(g, {}, b, 0), parameter_error);
}

TEST_CASE("sigma densities sum to one on random pairs") {
    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        std::vector<int> colors(static_cast<std::size_t>(binom2(10)));
        for (int& c : colors) c = int(rng.below(3));
        Alphabet tri({"0", "1", "2"});
        OrderedGraph g = make_graph(tri, 10, std::move(colors));
        std::vector<int> a = range_vec(0, 4), b = range_vec(4, 9);
        Rat total(0);
        for (int s = 0; s < 3; ++s) total += sigma_density(g, a, b, s);
        CHECK(total == Rat(1));
    }
}

TEST_CASE("monochromatic pairs are regular at every gamma") {
    OrderedGraph g = bipartite_block(1);
    std::vector<int> a = range_vec(0, 8), b = range_vec(8, 16);
    for (auto gamma : {Rat(1, 100), Rat(1, 8), Rat(1, 2)})
        CHECK(is_regular_pair(g, a, b, gamma).regular);
}

TEST_CASE("a deviant vertex breaks regularity at gamma 1/8") {
    OrderedGraph g = bipartite_block(1);
    // deviant row: half of vertex 0's cross edges flipped -> density gap 1/2
    for (int j = 0; j < 4; ++j) g.color(0, 8 + 2 * j) = 0;
    std::vector<int> a = range_vec(0, 8), b = range_vec(8, 16);

    RegularPairVerdict v = is_regular_pair(g, a, b, Rat(1, 8));
    CHECK(!v.regular);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->deviation > Rat(1, 8));

    // the worst witness isolates the deviant vertex
    bool contains_deviant = std::find(v.witness->a_subset.begin(), v.witness->a_subset.end(),
                                      0) != v.witness->a_subset.end();
    CHECK(contains_deviant);
}

TEST_CASE("exact regularity is monotone in gamma") {
    Rng rng(7);
    for (int it = 0; it < 12; ++it) {
        std::vector<int> colors(static_cast<std::size_t>(binom2(12)));
        for (int& c : colors) c = int(rng.below(2));
        OrderedGraph g = make_graph(Alphabet::binary(), 12, std::move(colors));
        std::vector<int> a = range_vec(0, 6), b = range_vec(6, 12);
        bool prev = is_regular_pair(g, a, b, Rat(1, 6)).regular;
        for (auto gamma : {Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(3, 4)}) {
            bool cur = is_regular_pair(g, a, b, gamma).regular;
            if (prev) CHECK(cur); // regular at smaller gamma stays regular
            prev = cur;
        }
    }
}

TEST_CASE("sampled mode can only certify irregularity") {
    OrderedGraph g = bipartite_block(1);
    for (int j = 0; j < 4; ++j) g.color(0, 8 + 2 * j) = 0;
    std::vector<int> a = range_vec(0, 8), b = range_vec(8, 16);
    RegularPairVerdict v = is_regular_pair_sampled(g, a, b, Rat(1, 8), 2000, 99);
    CHECK(!v.regular);
    CHECK(v.witness.has_value());
}

TEST_CASE("regular partition verdicts") {
    OrderedGraph mono = make_graph(Alphabet::binary(), 8, std::vector<int>(binom2(8), 1));
    KRefinement ref;
    ref.r = 2;
    ref.k = 2;
    ref.parts = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    RegularPartitionVerdict v = is_regular_partition(mono, ref, Rat(1, 4));
    CHECK(v.regular);
    CHECK(v.irregular_fraction == Rat(0));
    CHECK(v.cross_pairs == 4);

    // plant exactly one irregular cross pair: V_00 x V_10 colors {1,1,1,0}
    OrderedGraph g = mono;
    g.color(0, 4) = 0;
    RegularPartitionVerdict p = is_regular_partition(g, ref, Rat(1, 5));
    CHECK(p.irregular_pairs == 1);
    CHECK(p.irregular_fraction == Rat(1, 4));

    KRefinement bad = ref;
    bad.parts[0] = {0, 4}; // leaves interval 0
    CHECK_THROWS_AS(is_regular_partition(mono, bad, Rat(1, 4)), parameter_error);
    KRefinement uneven = ref;
    uneven.parts[0] = {0, 1, 2};
    uneven.parts[1] = {3};
    CHECK_THROWS_AS(is_regular_partition(mono, uneven, Rat(1, 4)), parameter_error);
}

TEST_CASE("regularity instance invariants") {
    std::vector<Rat> dens(8, Rat(1, 2));
    CHECK_THROWS_AS(RegularityInstance(Rat(1, 2), 2, 2, 2, {Rat(1, 2)}, {}),
                    parameter_error);
    CHECK_THROWS_AS(RegularityInstance(Rat(1, 2), 2, 2, 2,
                                       std::vector<Rat>(8, Rat(3, 2)), {}),
                    parameter_error);
    // exception budget: gamma * K = 0 forbids any exceptions
    CHECK_THROWS_AS(RegularityInstance(Rat(0), 2, 2, 2, dens, {{0, 0, 1, 0}}),
                    parameter_error);
    RegularityInstance inst(Rat(1, 2), 2, 2, 2, dens, {{0, 0, 1, 0}});
    CHECK(inst.table_size() == 8);
    CHECK(inst.complexity() == Rat(8));
    CHECK(inst.excepted(0, 0, 1, 0));
    CHECK(!inst.excepted(0, 1, 1, 0));
}

TEST_CASE("an all-exceptions instance is satisfied by every graph") {
    std::vector<Rat> dens(8, Rat(0));
    std::vector<std::array<int, 4>> all_tuples;
    for (int j = 0; j < 2; ++j)
        for (int j2 = 0; j2 < 2; ++j2) all_tuples.push_back({0, j, 1, j2});
    RegularityInstance inst(Rat(1), 2, 2, 2, dens, all_tuples);

    Rng rng(11);
    for (int it = 0; it < 5; ++it) {
        std::vector<int> colors(static_cast<std::size_t>(binom2(8)));
        for (int& c : colors) c = int(rng.below(2));
        OrderedGraph g = make_graph(Alphabet::binary(), 8, std::move(colors));
        InstanceVerdict v = satisfies_instance(g, inst);
        CHECK(v.satisfied);
        REQUIRE(v.witness.has_value());
    }
}

TEST_CASE("instance densities read off a refinement are satisfied") {
    Rng rng(13);
    std::vector<int> colors(static_cast<std::size_t>(binom2(8)));
    for (int& c : colors) c = int(rng.below(2));
    OrderedGraph g = make_graph(Alphabet::binary(), 8, std::move(colors));

    // first equitable refinement in enumeration order
    KRefinement first;
    bool got = false;
    for_each_equitable_refinement(8, 2, 2, [&](const KRefinement& ref) {
        first = ref;
        got = true;
        return false;
    });
    REQUIRE(got);

    std::vector<Rat> dens;
    for (int j = 0; j < 2; ++j)
        for (int j2 = 0; j2 < 2; ++j2)
            for (int s = 0; s < 2; ++s)
                dens.push_back(sigma_density(g, first.part(0, j), first.part(1, j2), s));
    // reorder into instance layout: (pair)(j)(j2)(sigma) with one pair only
    RegularityInstance inst(Rat(1), 2, 2, 2, dens, {});
    InstanceVerdict v = satisfies_instance(g, inst);
    CHECK(v.satisfied);
}

TEST_CASE("witness refinements pass the partition checker outside exceptions") {
    Rng rng(17);
    std::vector<int> colors(static_cast<std::size_t>(binom2(8)), 1);
    OrderedGraph g = make_graph(Alphabet::binary(), 8, std::move(colors));
    std::vector<Rat> dens;
    for (int i = 0; i < 4; ++i) {
        dens.push_back(Rat(1)); // color 1 everywhere
        std::swap(dens.back(), dens.back());
        dens.push_back(Rat(0));
    }
    // layout is (j, j2, sigma); color 1 has density 1 -> entries (s=0)->0,(s=1)->1
    std::vector<Rat> fixed;
    for (int t = 0; t < 4; ++t) {
        fixed.push_back(Rat(0));
        fixed.push_back(Rat(1));
    }
    RegularityInstance inst(Rat(1, 2), 2, 2, 2, fixed, {});
    InstanceVerdict v = satisfies_instance(g, inst);
    REQUIRE(v.satisfied);
    RegularPartitionVerdict pv = is_regular_partition(g, *v.witness, inst.gamma());
    CHECK(pv.regular);
}

TEST_CASE("phi instances: trivial bounds accept, forcing bounds reject") {
    int r = 2, k = 2, sigma = 2;
    std::size_t K = 8;
    std::vector<Rat> lo(K, Rat(0)), hi(K, Rat(1));
    PhiInstance trivial(r, k, sigma, lo, hi);

    Rng rng(19);
    std::vector<int> colors(static_cast<std::size_t>(binom2(8)));
    for (int& c : colors) c = int(rng.below(2));
    OrderedGraph g = make_graph(Alphabet::binary(), 8, std::move(colors));
    CHECK(satisfies_phi(g, trivial).satisfied);

    // force color-0 density 1 between all selected parts of a graph whose
    // cross edges are all color 1: unsatisfiable
    OrderedGraph ones = make_graph(Alphabet::binary(), 8,
                                   std::vector<int>(binom2(8), 1));
    std::vector<Rat> lo2(K), hi2(K);
    for (std::size_t t = 0; t < K; t += 2) {
        lo2[t] = Rat(1);     // sigma 0 in [1,1]
        hi2[t] = Rat(1);
        lo2[t + 1] = Rat(0); // sigma 1 in [0,0]
        hi2[t + 1] = Rat(0);
    }
    PhiInstance forcing(r, k, sigma, lo2, hi2);
    CHECK(!satisfies_phi(ones, forcing).satisfied);

    // invariant violations are rejected at construction
    std::vector<Rat> bad_lo(K, Rat(3, 4)), bad_hi(K, Rat(1));
    CHECK_THROWS_AS(PhiInstance(r, k, sigma, bad_hi, bad_lo), parameter_error);
}

TEST_CASE("phi verdict is invariant under consistent symbol relabeling") {
    Rng rng(23);
    std::vector<int> colors(static_cast<std::size_t>(binom2(8)));
    for (int& c : colors) c = int(rng.below(2));
    OrderedGraph g = make_graph(Alphabet::binary(), 8, colors);

    std::size_t K = 8;
    std::vector<Rat> lo(K, Rat(0)), hi(K, Rat(1));
    for (std::size_t t = 0; t < K; t += 2) hi[t] = Rat(1, 2); // constrain sigma 0

    OrderedGraph swapped = g;
    for (int& c : swapped.colors) c = 1 - c;
    std::vector<Rat> lo2(K, Rat(0)), hi2(K, Rat(1));
    for (std::size_t t = 0; t < K; t += 2) hi2[t + 1] = Rat(1, 2);

    CHECK(satisfies_phi(g, PhiInstance(2, 2, 2, lo, hi)).satisfied ==
          satisfies_phi(swapped, PhiInstance(2, 2, 2, lo2, hi2)).satisfied);
}

TEST_CASE("instance verdict invariant under within-interval relabeling") {
    Rng rng(29);
    std::vector<int> colors(static_cast<std::size_t>(binom2(8)));
    for (int& c : colors) c = int(rng.below(2));
    OrderedGraph g = make_graph(Alphabet::binary(), 8, colors);

    KRefinement first;
    for_each_equitable_refinement(8, 2, 2, [&](const KRefinement& ref) {
        first = ref;
        return false;
    });
    std::vector<Rat> dens;
    for (int j = 0; j < 2; ++j)
        for (int j2 = 0; j2 < 2; ++j2)
            for (int s = 0; s < 2; ++s)
                dens.push_back(sigma_density(g, first.part(0, j), first.part(1, j2), s));
    RegularityInstance inst(Rat(1), 2, 2, 2, dens, {});

    // swap two vertices inside interval 0: the witnessing refinement moves
    // to another equitable refinement, the verdict must not change
    OrderedGraph relabeled = apply_permutation(g, Permutation::from_one_based(
                                                      {2, 1, 3, 4, 5, 6, 7, 8}));
    CHECK(satisfies_instance(g, inst).satisfied ==
          satisfies_instance(relabeled, inst).satisfied);
}

TEST_CASE("instance files round-trip") {
    std::vector<Rat> dens;
    for (int t = 0; t < 8; ++t) dens.push_back(Rat(t, 8));
    RegularityInstance inst(Rat(1, 4), 2, 2, 2, dens, {{0, 1, 1, 0}});

    std::ostringstream out;
    write_regularity_instance(out, inst);
    std::istringstream in(out.str());
    RegularityInstance back = read_regularity_instance(in);
    CHECK(back.r() == 2);
    CHECK(back.k() == 2);
    CHECK(back.gamma() == Rat(1, 4));
    CHECK(back.raw_densities() == dens);
    CHECK(back.excepted(0, 1, 1, 0));
}

TEST_CASE("capacity caps") {
    OrderedGraph big = make_graph(Alphabet::binary(), 17,
                                  std::vector<int>(binom2(17), 0));
    std::vector<Rat> dens(8, Rat(0));
    RegularityInstance inst(Rat(1), 2, 2, 2, dens, {});
    CHECK_THROWS_AS(satisfies_instance(big, inst), capacity_error);

    std::vector<int> a(15), b(15);
    for (int i = 0; i < 15; ++i) {
        a[std::size_t(i)] = i;
        b[std::size_t(i)] = 15 + i;
    }
    OrderedGraph wide = make_graph(Alphabet::binary(), 30,
                                   std::vector<int>(binom2(30), 0));
    CHECK_THROWS_AS(is_regular_pair(wide, a, b, Rat(1, 2)), capacity_error);
}
