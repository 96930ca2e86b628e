#include <catch_amalgamated.hpp>

#include "orthorank/exact.hpp"
#include "support.hpp"

using namespace orthorank;
namespace ts = testing_support;

namespace {

Graph fam(Family f, std::vector<int> p) { return generate({f, std::move(p)}); }

/// Weak duality from first principles: y covers every vertex using genuinely
/// independent sets, z loads every independent set (all of them, found by
/// enumeration) by at most 1, and the objectives agree. Then both are optimal.
bool independently_optimal(const Graph& g, const FractionalColouring& f) {
    const auto a = ts::adjacency(g);
    const int n = g.order();
    Rational primal(0), dual(0);
    std::vector<Rational> cover(n, Rational(0));
    for (std::size_t i = 0; i < f.sets.size(); ++i) {
        if (f.set_weights[i] < 0) return false;
        if (!ts::is_independent(a, static_cast<std::uint32_t>(f.sets[i]))) return false;
        primal += f.set_weights[i];
        for (int v = 0; v < n; ++v)
            if (f.sets[i] >> v & 1) cover[v] += f.set_weights[i];
    }
    for (const auto& c : cover)
        if (c < 1) return false;
    for (int v = 0; v < n; ++v) {
        if (f.vertex_weights[v] < 0) return false;
        dual += f.vertex_weights[v];
    }
    for (auto s : ts::all_independent_sets(g)) {
        Rational load(0);
        for (int v = 0; v < n; ++v)
            if (s >> v & 1) load += f.vertex_weights[v];
        if (load > 1) return false;
    }
    return primal == dual && primal == f.value;
}

} // namespace

TEST_CASE("chromatic number of named graphs") {
    CHECK(chromatic_number(fam(Family::cycle, {5})).value() == 3);
    CHECK(chromatic_number(fam(Family::kneser, {5, 2})).value() == 3);
    CHECK(chromatic_number(fam(Family::orthogonality, {4})).value() == 4);
    CHECK(chromatic_number(fam(Family::folded_cube, {5})).value() == 4);
    CHECK(chromatic_number(fam(Family::complete, {6})).value() == 6);
    CHECK(chromatic_number(empty_graph(5)).value() == 1);
}

TEST_CASE("chromatic number matches brute force for n <= 7") {
    for (const auto& g : ts::connected_corpus(300, 7, 1234)) {
        const auto r = chromatic_number(g);
        REQUIRE(r.exact);
        const int brute = ts::brute_chromatic(g);
        CHECK(r.value() == brute);
        CHECK(ts::subset_chromatic(g) == brute);
    }
}

TEST_CASE("an exhausted budget is inconclusive, never a guess") {
    const Graph g = fam(Family::kneser, {7, 2});
    const auto r = chromatic_number(g, 1);
    if (!r.exact) {
        CHECK(r.lower <= 5);
        CHECK(r.upper >= 5);
        CHECK(r.value() == -1);
    } else {
        CHECK(r.value() == 5);
    }
}

TEST_CASE("clique and independence numbers") {
    const auto k5 = clique_and_independence(fam(Family::complete, {5}));
    CHECK(k5.omega.value() == 5);
    CHECK(k5.alpha.value() == 1);
    const auto c5 = clique_and_independence(fam(Family::cycle, {5}));
    CHECK(c5.omega.value() == 2);
    CHECK(c5.alpha.value() == 2);
    const Graph clebsch = fam(Family::folded_cube, {5});
    CHECK(clique_and_independence(clebsch).alpha.value() == 5);
    CHECK(ts::brute_alpha(clebsch) == 5);

    for (const auto& g : ts::connected_corpus(150, 9, 77)) {
        const auto r = clique_and_independence(g);
        CHECK(r.omega.value() == ts::brute_omega(g));
        CHECK(r.alpha.value() == ts::brute_alpha(g));
        const auto w = max_clique(g);
        CHECK(std::popcount(w.witness) == w.size.value());
    }
}

TEST_CASE("maximal independent sets") {
    CHECK(maximal_independent_sets(fam(Family::cycle, {5})).size() == 5);
    CHECK(maximal_independent_sets(fam(Family::complete, {4})).size() == 4);
    for (const auto& g : ts::connected_corpus(60, 8, 5)) {
        const auto a = ts::adjacency(g);
        std::vector<std::uint32_t> expect;
        for (auto s : ts::all_independent_sets(g)) {
            bool maximal = true;
            for (int v = 0; v < g.order() && maximal; ++v)
                if (!(s >> v & 1) && ts::is_independent(a, s | (1u << v))) maximal = false;
            if (maximal) expect.push_back(s);
        }
        auto got = maximal_independent_sets(g);
        std::vector<std::uint32_t> got32(got.begin(), got.end());
        std::sort(got32.begin(), got32.end());
        CHECK(got32 == expect);
    }
}

TEST_CASE("fractional chromatic number, exact") {
    CHECK(fractional_chromatic_number(fam(Family::cycle, {5})).value == Rational(5, 2));
    CHECK(fractional_chromatic_number(fam(Family::folded_cube, {5})).value == Rational(16, 5));
    CHECK(fractional_chromatic_number(fam(Family::andrasfai, {3})).value == Rational(8, 3));
    CHECK(fractional_chromatic_number(fam(Family::kneser, {5, 2})).value == Rational(5, 2));
    CHECK(fractional_chromatic_number(fam(Family::orthogonality, {4})).value == Rational(4));
    const Graph prod = disjunctive_product(fam(Family::cycle, {5}), fam(Family::complete, {3}));
    CHECK(fractional_chromatic_number(prod).value == Rational(15, 2));
    CHECK(fractional_chromatic_number(empty_graph(3)).value == Rational(1));
    CHECK_THROWS_AS(fractional_chromatic_number(fam(Family::cycle, {21})), ValidationError);
}

TEST_CASE("fractional LP optimum is certified independently") {
    for (const auto& g : ts::connected_corpus(120, 9, 4321)) {
        const auto f = fractional_chromatic_number(g);
        CHECK(independently_optimal(g, f));
        CHECK(certifies_optimum(g.order(), f));
        const int chi = ts::subset_chromatic(g), omega = ts::brute_omega(g), alpha = ts::brute_alpha(g);
        CHECK(Rational(omega) <= f.value);
        CHECK(f.value <= Rational(chi));
        CHECK(f.value >= Rational(g.order(), alpha));
    }
}

TEST_CASE("vertex-transitive families have chi_f = n / alpha") {
    for (const auto& spec : std::vector<FamilySpec>{{Family::cycle, {7}},
                                                    {Family::kneser, {6, 2}},
                                                    {Family::andrasfai, {4}},
                                                    {Family::folded_cube, {5}},
                                                    {Family::orthogonality, {4}}}) {
        const Graph g = generate(spec);
        const auto e = compute_exact(g);
        REQUIRE(e.chi_f);
        CHECK(*e.chi_f == Rational(g.order(), e.alpha.value()));
    }
}

TEST_CASE("simplex with a hand-checked LP") {
    // path on three vertices: sets {0,2} and {1}; chi_f = 2
    const auto f = solve_fractional_colouring(3, {0b101, 0b010});
    CHECK(f.value == 2);
    CHECK(certifies_optimum(3, f));
}
