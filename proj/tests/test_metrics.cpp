#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ordtest/metrics.hpp"
#include "ordtest/properties.hpp"
#include "ordtest/rng.hpp"

using namespace ordtest;

namespace {

OrderedGraph random_graph(int n, int sigma, Rng& rng) {
    std::vector<int> colors(std::size_t(n) * (n - 1) / 2);
    for (int& c : colors) c = int(rng.below(std::uint64_t(sigma)));
    std::vector<std::string> labels;
    for (int i = 0; i < sigma; ++i) labels.push_back(std::to_string(i));
    return make_graph(Alphabet(labels), n, std::move(colors));
}

OrderedString string_from_code(int n, std::int64_t code, int sigma = 2) {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::int64_t c = code;
    for (int i = 0; i < n; ++i) {
        e[std::size_t(i)] = int(c % sigma);
        c /= sigma;
    }
    std::vector<std::string> labels;
    for (int i = 0; i < sigma; ++i) labels.push_back(std::to_string(i));
    return make_string(Alphabet(labels), std::move(e));
}

std::int64_t value_inversions(const OrderedString& s) {
    std::int64_t inv = 0;
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            if (s.entries[std::size_t(i)] > s.entries[std::size_t(j)]) ++inv;
    return inv;
}

} // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(0));
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(7, 2).ceil() == 4);
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK((Rat(3, 4) - Rat(5, 4)).abs() == Rat(1, 2));
    CHECK_THROWS_AS(Rat(1, 0), parameter_error);
    CHECK(ExtRat::infinity().str() == "inf");
    CHECK(Rat(1, 2) < Rat(2, 3));
}

TEST_CASE("hamming distance examples") {
    OrderedString a = binary_string("000");
    CHECK(hamming(a, a).absolute == 0);

    OrderedString f = binary_string("000");
    OrderedString g = binary_string("010");
    DistanceResult d = hamming(f, g);
    CHECK(d.absolute == 1);
    CHECK(d.relative == Rat(1, 3));

    Rng rng(5);
    OrderedGraph h = random_graph(5, 2, rng);
    OrderedGraph comp = h;
    for (int& c : comp.colors) c = 1 - c;
    DistanceResult dc = hamming(OrderedStructure(h), OrderedStructure(comp));
    CHECK(dc.absolute == binom2(5));
    CHECK(dc.relative == Rat(1));

    OrderedString shorter = binary_string("00");
    CHECK_THROWS_AS(hamming(OrderedStructure(f), OrderedStructure(shorter)), parameter_error);
}

TEST_CASE("mixing set examples") {
    CHECK(mixing_set(Permutation(4)).count == 0);

    Permutation rev = Permutation::from_one_based({4, 3, 2, 1});
    CHECK(mixing_set(rev).count == 6);
    CHECK(mixing_set(rev).normalized == Rat(1));

    Permutation s = Permutation::from_one_based({2, 4, 1, 3});
    MixingSetResult ms = mixing_set(s);
    CHECK(ms.count == 3);
    std::set<std::pair<int, int>> pairs(ms.inverted_pairs.begin(), ms.inverted_pairs.end());
    CHECK(pairs == std::set<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 4}});
}

TEST_CASE("min basic moves: BFS oracle equals inversion count") {
    CHECK(min_basic_moves(Permutation(3)) == 0);
    CHECK(min_basic_moves(Permutation::adjacent_transposition(5, 2)) == 1);

    for (int n = 2; n <= 5; ++n) {
        for_each_permutation(n, [&](const Permutation& sigma) {
            CHECK(min_basic_moves(sigma) == mixing_set(sigma).count);
            return true;
        });
    }

    std::vector<int> img(9);
    for (int i = 0; i < 9; ++i) img[std::size_t(i)] = i;
    CHECK_THROWS_AS(min_basic_moves(Permutation::from_zero_based(img)), capacity_error);
}

TEST_CASE("earthmover distance examples") {
    OrderedString ab = binary_string("01");
    OrderedString ba = binary_string("10");
    OrderedString aa = binary_string("00");

    CHECK(earthmover_distance(ab, ab).distance.absolute == 0);
    EarthmoverResult r = earthmover_distance(ab, ba);
    CHECK(r.distance.absolute == 1);
    CHECK(r.exact);
    CHECK(!earthmover_distance(ab, aa).distance.finite);
}

TEST_CASE("BFS over structures agrees with permutation minimization") {
    Rng rng(31);
    for (int it = 0; it < 12; ++it) {
        int n = 3 + int(it % 3); // 3..5
        OrderedGraph g = random_graph(n, 2, rng);
        auto orbit = structure_orbit_distances(g);
        int checked = 0;
        for (const auto& [key, d] : orbit) {
            if (checked++ > 40) break;
            OrderedGraph h = make_graph(g.alphabet, n, key);
            EarthmoverResult em = earthmover_distance(g, h);
            CHECK(em.distance.finite);
            CHECK(em.distance.absolute == d);
        }
    }
}

TEST_CASE("earthmover symmetry and triangle inequality on isomorphic triples") {
    Rng rng(37);
    for (int it = 0; it < 8; ++it) {
        int n = 4;
        OrderedGraph g = random_graph(n, 2, rng);
        auto orbit = structure_orbit_distances(g);
        std::vector<std::vector<int>> keys;
        for (const auto& [key, d] : orbit) keys.push_back(key);
        for (int t = 0; t < 10; ++t) {
            const auto& ka = keys[rng.below(keys.size())];
            const auto& kb = keys[rng.below(keys.size())];
            const auto& kc = keys[rng.below(keys.size())];
            OrderedGraph a = make_graph(g.alphabet, n, ka);
            OrderedGraph b = make_graph(g.alphabet, n, kb);
            OrderedGraph c = make_graph(g.alphabet, n, kc);
            std::int64_t ab = earthmover_distance(a, b).distance.absolute;
            std::int64_t ba = earthmover_distance(b, a).distance.absolute;
            std::int64_t ac = earthmover_distance(a, c).distance.absolute;
            std::int64_t cb = earthmover_distance(c, b).distance.absolute;
            CHECK(ab == ba);
            CHECK(ab <= ac + cb);
        }
    }
}

TEST_CASE("string earthmover equals the permutation enumeration route") {
    Rng rng(41);
    for (int it = 0; it < 120; ++it) {
        int n = 2 + int(rng.below(6)); // up to 7
        int sigma = 2 + int(rng.below(2));
        OrderedString a = string_from_code(n, std::int64_t(rng.next_u64() % 2000), sigma);
        std::vector<int> perm(a.entries);
        rng.shuffle(perm);
        OrderedString b = make_string(a.alphabet, perm); // same multiset
        DistanceResult fast = string_earthmover(a, b);
        EarthmoverResult slow = earthmover_distance(a, b);
        CHECK(fast.finite == slow.distance.finite);
        CHECK(fast.absolute == slow.distance.absolute);
    }
    // different multisets are infinitely far
    CHECK(!string_earthmover(binary_string("01"), binary_string("00")).finite);
}

TEST_CASE("earthmover heuristic is a labeled upper bound") {
    Rng rng(43);
    for (int it = 0; it < 20; ++it) {
        int n = 3 + int(rng.below(3));
        OrderedGraph g = random_graph(n, 2, rng);
        std::vector<int> img(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) img[std::size_t(i)] = i;
        rng.shuffle(img);
        OrderedGraph h = apply_permutation(g, Permutation::from_zero_based(img));

        EarthmoverResult exact = earthmover_distance(g, h);
        EarthmoverResult heur = earthmover_heuristic(g, h, 99, 16);
        CHECK(!heur.exact);
        CHECK(heur.distance.finite);
        CHECK(heur.distance.absolute >= exact.distance.absolute);
    }
}

TEST_CASE("variation distance: half-L1 equals the max-event form") {
    Rng rng(47);
    for (int it = 0; it < 40; ++it) {
        int m = 2 + int(rng.below(11)); // support size up to 12
        auto draw = [&]() {
            std::vector<Rat> d;
            std::int64_t total = 0;
            std::vector<std::int64_t> w(static_cast<std::size_t>(m));
            for (auto& x : w) {
                x = 1 + std::int64_t(rng.below(20));
                total += x;
            }
            for (auto x : w) d.emplace_back(x, total);
            return DistributionVector{d};
        };
        DistributionVector mu = draw(), eta = draw();
        Rat vd = variation_distance(mu, eta);

        Rat max_event(0);
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            Rat diff(0);
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i))
                    diff += mu.densities[std::size_t(i)] - eta.densities[std::size_t(i)];
            if (diff.abs() > max_event) max_event = diff.abs();
        }
        CHECK(vd == max_event);
    }
    DistributionVector pm1{{Rat(1), Rat(0)}};
    DistributionVector pm2{{Rat(0), Rat(1)}};
    CHECK(variation_distance(pm1, pm1) == Rat(0));
    CHECK(variation_distance(pm1, pm2) == Rat(1));
}

TEST_CASE("variation distance is a metric on a fixed support") {
    Rng rng(53);
    for (int it = 0; it < 30; ++it) {
        int m = 3;
        auto draw = [&]() {
            std::vector<Rat> d;
            std::int64_t total = 0;
            std::vector<std::int64_t> w(static_cast<std::size_t>(m));
            for (auto& x : w) {
                x = std::int64_t(rng.below(9));
                total += x;
            }
            if (total == 0) {
                w[0] = 1;
                total = 1;
            }
            for (auto x : w) d.emplace_back(x, total);
            return DistributionVector{d};
        };
        DistributionVector a = draw(), b = draw(), c = draw();
        CHECK(variation_distance(a, b) == variation_distance(b, a));
        CHECK(variation_distance(a, b) + variation_distance(b, c) >= variation_distance(a, c));
        CHECK((variation_distance(a, b) == Rat(0)) ==
              (std::equal(a.densities.begin(), a.densities.end(), b.densities.begin(),
                          [](const Rat& x, const Rat& y) { return x == y; })));
    }
}

TEST_CASE("q-statistic basics") {
    Alphabet bin = Alphabet::binary();
    OrderedGraph mono = make_graph(bin, 6, std::vector<int>(15, 1));
    QStatistic q3 = q_statistic(mono, 3);
    CHECK(q3.weights.size() == 1);
    CHECK(q3.weights.begin()->second == Rat(1));
    CHECK(q3.weights.begin()->first == std::vector<int>{1, 1, 1});

    Rng rng(59);
    OrderedGraph g = random_graph(9, 2, rng);
    QStatistic q2 = q_statistic(g, 2);
    CHECK(q2.total() == Rat(1));

    // q=2 equals the global edge-color distribution
    std::int64_t ones = 0;
    for (int c : g.colors) ones += c;
    auto it = q2.weights.find({1});
    CHECK(it != q2.weights.end());
    CHECK(it->second == Rat(ones, binom2(9)));

    CHECK_THROWS_AS(q_statistic(g, 10), parameter_error);
    CHECK_THROWS_AS(q_statistic(g, 3, QStatMode::k_separated, 2), parameter_error);
}

TEST_CASE("q-statistic vs k-separated statistic bound") {
    Rng rng(61);
    for (int it = 0; it < 6; ++it) {
        OrderedGraph g = random_graph(12, 2, rng);
        QStatistic plain = q_statistic(g, 3);
        for (int k : {6, 9, 12}) {
            QStatistic sep = q_statistic(g, 3, QStatMode::k_separated, k);
            CHECK(sep.total() == Rat(1));
            CHECK(variation_distance(plain, sep) <= Rat(9, 2 * k));
        }
    }
}

TEST_CASE("sampled q-statistic approaches the exact one") {
    Rng rng(67);
    OrderedGraph g = random_graph(10, 2, rng);
    QStatistic exact = q_statistic(g, 2);
    QStatistic sampled = q_statistic_sampled(g, 2, 20000, 123);
    CHECK(!sampled.exact);
    CHECK(sampled.std_error > 0);
    CHECK(sampled.total() == Rat(1));
    for (const auto& [key, w] : exact.weights) {
        auto it = sampled.weights.find(key);
        double est = it == sampled.weights.end() ? 0.0 : it->second.to_double();
        CHECK(std::abs(est - w.to_double()) < 5 * 0.0036); // 5 sigma at 20k trials
    }
    CHECK(k_separated_count(12, 3, 6) == 160); // 2^3 * C(6,3)
}

TEST_CASE("distance to property: examples and the exhaustive oracle") {
    Property p = p111();
    OrderedString member = binary_string("110110");
    CHECK(distance_to_property(member, p) == Rat(0));

    OrderedString ones = binary_string("111111111");
    Rat via_oracle = p.distance_oracle(OrderedStructure(ones));
    Rat via_search = exhaustive_distance(ones, p.contains);
    CHECK(via_oracle == Rat(3, 9));
    CHECK(via_search == Rat(3, 9));
}

TEST_CASE("exhaustive search agrees with the monotonicity oracle up to n=12") {
    Property mono = monotone_string();
    for (int n : {4, 7, 12}) {
        std::int64_t count = 1LL << n;
        for (std::int64_t code = 0; code < count; ++code) {
            OrderedString s = string_from_code(n, code);
            Rat oracle = mono.distance_oracle(OrderedStructure(s));
            Rat search = exhaustive_distance(s, mono.contains);
            CHECK(oracle == search);
        }
    }
}

TEST_CASE("p111 oracle agrees with exhaustive search") {
    Property p = p111();
    for (int n : {3, 6, 9}) {
        std::int64_t count = 1LL << n;
        for (std::int64_t code = 0; code < count; ++code) {
            OrderedString s = string_from_code(n, code);
            CHECK(p.distance_oracle(OrderedStructure(s)) == exhaustive_distance(s, p.contains));
        }
    }
}

TEST_CASE("aggregated distance basics") {
    OrderedString s = binary_string("0101100110");
    CHECK(aggregated_distance(s, s, 3) == Rat(0));

    Rng rng(71);
    for (int it = 0; it < 40; ++it) {
        int n = 4 + int(rng.below(8));
        OrderedString a = string_from_code(n, std::int64_t(rng.next_u64() % (1u << n)));
        OrderedString b = string_from_code(n, std::int64_t(rng.next_u64() % (1u << n)));
        int t = 1 + int(rng.below(std::uint64_t(n)));
        // d_A <= d_H: per-interval variation distance lower-bounds the
        // per-interval Hamming fraction
        CHECK(aggregated_distance(a, b, t) <= hamming(a, b).relative);
    }
}

TEST_CASE("monotone histogram oracle equals exhaustive aggregated search") {
    Property mono = monotone_string();
    for (int n : {6, 9}) {
        for (int t : {1, 2, 3}) {
            std::int64_t count = 1LL << n;
            for (std::int64_t code = 0; code < count; code += 3) {
                OrderedString s = string_from_code(n, code);
                Rat via_oracle = aggregated_distance_to_property(s, mono, t);
                Property no_oracle = mono;
                no_oracle.histogram_oracle = nullptr;
                Rat via_search = aggregated_distance_to_property(s, no_oracle, t);
                CHECK(via_oracle == via_search);
            }
        }
    }
}

TEST_CASE("aggregated distance brackets Hamming distance at the lemma's t") {
    // 0 <= d_H(S,P) - d_A(S,P) <= eps/2 at t = ceil(2/delta(eps/2)) with the
    // monotone modulus delta(eps) = eps^2
    Property mono = monotone_string();
    int n = 10;
    double eps = 0.95;
    double delta = (eps / 2) * (eps / 2);
    int t = int(std::ceil(2.0 / delta));
    REQUIRE(t <= n);
    for (std::int64_t code = 0; code < (1LL << n); ++code) {
        OrderedString s = string_from_code(n, code);
        Rat dh = mono.distance_oracle(OrderedStructure(s));
        Rat da = aggregated_distance_to_property(s, mono, t);
        CHECK(da <= dh);
        CHECK(dh - da <= Rat(19, 40)); // eps/2 = 0.475
    }
}

TEST_CASE("monotone resilience modulus: distance squared at most sigma * inversions") {
    // the exhaustive check behind delta(eps) = 2*eps^2/|Sigma| for monotone
    // strings; alternating strings make it tight
    for (int sigma : {2, 3, 4}) {
        Property mono = monotone_string(sigma);
        int n_max = sigma == 2 ? 14 : (sigma == 3 ? 9 : 7);
        for (int n = 2; n <= n_max; ++n) {
            std::int64_t count = 1;
            for (int i = 0; i < n; ++i) count *= sigma;
            for (std::int64_t code = 0; code < count; ++code) {
                OrderedString s = string_from_code(n, code, sigma);
                std::int64_t d =
                    (mono.distance_oracle(OrderedStructure(s)) * Rat(n)).floor();
                CHECK(d * d <= sigma * value_inversions(s));
            }
        }
    }
}
