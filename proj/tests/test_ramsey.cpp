#include <doctest.h>

#include <chrono>
#include <cstdint>
#include <random>

#include "oracles.hpp"
#include "polignac/ramsey.hpp"

using namespace polignac;

namespace {

EmpiricalPol pol_with(std::vector<uint64_t> members) {
    return EmpiricalPol{SieveLimit(1000000), 1, std::move(members)};
}

ColoredGraph random_graph(std::mt19937_64& rng, size_t n) {
    std::vector<uint64_t> vertices;
    for (size_t i = 0; i < n; ++i) vertices.push_back(10 * (i + 1));
    std::vector<std::pair<size_t, size_t>> blue;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (rng() % 2) blue.emplace_back(i, j);
    return ColoredGraph::from_blue_pairs(std::move(vertices), blue, "test");
}

} // namespace

TEST_SUITE_BEGIN("ramsey");

TEST_CASE("coloring follows pol membership") {
    auto pol = pol_with({2, 4, 6, 8, 12, 14});
    auto g = color_graph({0, 2, 6, 14}, pol);
    CHECK(g.blue_edge_count() == 6);
    CHECK(g.red_edge_count() == 0);

    auto h = color_graph({0, 1}, pol_with({2}));
    CHECK(h.blue_edge_count() == 0);
    CHECK(h.red_edge_count() == 1);

    auto k = color_graph({0, 2}, pol_with({2}));
    CHECK(k.is_blue(0, 1));
}

TEST_CASE("coloring partitions the edge set") {
    std::mt19937_64 rng(5);
    for (size_t n : {2, 5, 9}) {
        auto g = random_graph(rng, n);
        CHECK(g.blue_edge_count() + g.red_edge_count() == n * (n - 1) / 2);
    }
}

TEST_CASE("graph construction validation") {
    auto pol = pol_with({2});
    CHECK_THROWS_AS(color_graph({5}, pol), ConfigError);
    CHECK_THROWS_AS(color_graph({5, 5}, pol), ConfigError);
    CHECK_THROWS_AS(color_graph({7, 5}, pol), ConfigError);
}

TEST_CASE("clique search examples") {
    auto pol = pol_with({2, 4, 6, 8, 12, 14});
    auto g = color_graph({0, 2, 6, 14}, pol);
    CHECK(find_clique(g, EdgeColor::Blue, 4) == std::vector<size_t>{1, 2, 3, 4});
    CHECK(find_clique(g, EdgeColor::Blue, 1) == std::vector<size_t>{1});
    CHECK_FALSE(find_clique(g, EdgeColor::Red, 2).has_value());

    auto h = color_graph({0, 1}, pol);
    CHECK_FALSE(find_clique(h, EdgeColor::Blue, 2).has_value());
    CHECK_THROWS_AS(find_clique(h, EdgeColor::Blue, 0), ConfigError);
}

TEST_CASE("found cliques are pairwise monochromatic") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 40; ++round) {
        auto g = random_graph(rng, 8);
        for (size_t m : {2, 3, 4}) {
            auto c = find_clique(g, EdgeColor::Blue, m);
            if (c) {
                for (size_t a = 0; a < c->size(); ++a)
                    for (size_t b = a + 1; b < c->size(); ++b)
                        CHECK(g.is_blue((*c)[a] - 1, (*c)[b] - 1));
            }
        }
    }
}

TEST_CASE("clique search agrees with brute force") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 60; ++round) {
        size_t n = 2 + rng() % 11; // up to 12 vertices
        auto g = random_graph(rng, n);
        std::vector<std::vector<bool>> blue_adj(n, std::vector<bool>(n, false));
        std::vector<std::vector<bool>> red_adj(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                blue_adj[i][j] = blue_adj[j][i] = g.is_blue(i, j);
                red_adj[i][j] = red_adj[j][i] = !g.is_blue(i, j);
            }
        for (size_t m = 1; m <= n; ++m) {
            CHECK(find_clique(g, EdgeColor::Blue, m).has_value() ==
                  oracle::has_clique_trial(blue_adj, m));
            CHECK(find_clique(g, EdgeColor::Red, m).has_value() ==
                  oracle::has_clique_trial(red_adj, m));
        }
    }
}

TEST_CASE("ramsey bound table and binomial fallback") {
    CHECK(ramsey_bound({2, 5}).value == 5);
    CHECK(ramsey_bound({2, 5}).exact);
    CHECK(ramsey_bound({5, 2}).value == 5);
    CHECK(ramsey_bound({1, 7}).value == 1);
    CHECK(ramsey_bound({7, 1}).value == 1);
    CHECK(ramsey_bound({3, 3}).value == 6);
    CHECK(ramsey_bound({3, 3}).exact);

    auto b34 = ramsey_bound({3, 4});
    CHECK(b34.value == 10); // C(5,2)
    CHECK_FALSE(b34.exact);
    CHECK_FALSE(b34.saturated);
    CHECK(ramsey_bound({4, 4}).value == 20); // C(6,3)

    auto big = ramsey_bound({40, 40});
    CHECK(big.saturated);
    CHECK(big.value == kMaxSieveLimit);

    CHECK_THROWS_AS(RamseyQuery(0, 3), ConfigError);
}

TEST_CASE("exhaustive verification at the classic small cases") {
    auto t0 = std::chrono::steady_clock::now();
    auto r335 = verify_ramsey_exhaustive(3, 3, 5);
    CHECK_FALSE(r335.holds);
    REQUIRE(r335.counterexample.has_value());

    auto r336 = verify_ramsey_exhaustive(3, 3, 6);
    CHECK(r336.holds);
    CHECK_FALSE(r336.counterexample.has_value());

    CHECK(verify_ramsey_exhaustive(2, 2, 2).holds);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    CHECK(elapsed.count() < 2.0);

    CHECK_THROWS_AS(verify_ramsey_exhaustive(3, 3, 7), TooLarge);
}

TEST_CASE("counterexample coloring really avoids both cliques") {
    auto res = verify_ramsey_exhaustive(3, 3, 5);
    REQUIRE(res.counterexample.has_value());
    auto edges = complete_graph_edges(5);
    std::vector<std::vector<bool>> blue_adj(5, std::vector<bool>(5, false));
    std::vector<std::vector<bool>> red_adj(5, std::vector<bool>(5, false));
    for (unsigned e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        bool blue = (*res.counterexample >> e) & 1;
        blue_adj[i][j] = blue_adj[j][i] = blue;
        red_adj[i][j] = red_adj[j][i] = !blue;
    }
    CHECK_FALSE(oracle::has_clique_trial(blue_adj, 3));
    CHECK_FALSE(oracle::has_clique_trial(red_adj, 3));
}

TEST_CASE("random colorings on R(3,3) vertices always contain a clique") {
    std::mt19937_64 rng(333);
    for (int round = 0; round < 200; ++round) {
        auto g = random_graph(rng, 6);
        bool blue = find_clique(g, EdgeColor::Blue, 3).has_value();
        bool red = find_clique(g, EdgeColor::Red, 3).has_value();
        CHECK((blue || red));
    }
}

TEST_SUITE_END();
