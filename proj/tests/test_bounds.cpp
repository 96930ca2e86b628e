#include <catch_amalgamated.hpp>

#include <cmath>

#include "orthorank/bounds.hpp"
#include "orthorank/exact.hpp"
#include "support.hpp"

using namespace orthorank;
namespace ts = testing_support;

namespace {

Graph fam(Family f, std::vector<int> p) { return generate({f, std::move(p)}); }

BoundSet bounds_of(const Graph& g) { return evaluate_bounds(g, compute_spectra(g)); }

const double kSqrt5 = std::sqrt(5.0);

} // namespace

TEST_CASE("hoffman bound") {
    CHECK(hoffman_bound(inertia(fam(Family::complete, {4}))).value == Catch::Approx(4.0).margin(1e-12));
    CHECK(std::abs(hoffman_bound(inertia(fam(Family::cycle, {5}))).value - kSqrt5) < 1e-9);
    CHECK(std::abs(hoffman_bound(inertia(ts::petersen_drawing())).value - 2.5) < 1e-9);
    const auto empty = hoffman_bound(inertia(empty_graph(4)));
    CHECK(empty.value == 1.0);
    CHECK(empty.status == BoundStatus::degenerate);
    CHECK(hoffman_bound(inertia(fam(Family::cycle, {5}))).target == Target::chi_vect_le_xi);
}

TEST_CASE("lima bound") {
    const Graph k33 = fam(Family::complete_bipartite, {3, 3});
    CHECK(std::abs(lima_bound(k33, spectrum(k33, MatrixKind::signless_laplacian())).value - 2.0) < 1e-9);
    const Graph c5 = fam(Family::cycle, {5});
    // delta_n = 2 + mu_n for a 2-regular graph
    const double delta_n = 2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0);
    CHECK(std::abs(lima_bound(c5, spectrum(c5, MatrixKind::signless_laplacian())).value -
                   (1.0 + 10.0 / (10.0 - 5.0 * delta_n))) < 1e-9);
    const Graph k4 = fam(Family::complete, {4});
    CHECK(std::abs(lima_bound(k4, spectrum(k4, MatrixKind::signless_laplacian())).value - 4.0) < 1e-9);
    const Graph e = empty_graph(3);
    CHECK(lima_bound(e, spectrum(e, MatrixKind::signless_laplacian())).status == BoundStatus::degenerate);
    CHECK_THROWS_AS(lima_bound(c5, inertia(c5)), ValidationError);
}

TEST_CASE("kolotilina bound") {
    for (const auto& [g, expect] : std::vector<std::pair<Graph, double>>{
             {fam(Family::complete, {4}), 4.0}, {fam(Family::cycle, {5}), kSqrt5}, {ts::petersen_drawing(), 2.5}}) {
        const auto s = compute_spectra(g);
        CHECK(std::abs(kolotilina_bound(s.adjacency, s.laplacian, s.signless_laplacian).value - expect) < 1e-9);
    }
}

TEST_CASE("generalized bound") {
    const Graph c5 = fam(Family::cycle, {5});
    const std::vector<double> zero(5, 0.0);
    CHECK(std::abs(generalized_bound(c5, zero).value - kSqrt5) < 1e-9);
    CHECK(std::abs(generalized_bound(c5, degree_diagonal(c5)).value - kSqrt5) < 1e-9);
    const Graph k4 = fam(Family::complete, {4});
    const std::vector<double> ones(4, 1.0);
    CHECK(std::abs(generalized_bound(k4, ones).value - 4.0) < 1e-9);
    CHECK_THROWS_AS(generalized_bound(k4, zero), ValidationError);
}

TEST_CASE("inertial bounds are exact rationals") {
    CHECK(inertial_bound(inertia(fam(Family::cycle, {5}))).value == Rational(5, 2));
    CHECK(inertial_bound(inertia(fam(Family::folded_cube, {5}))).value == Rational(16, 5));
    CHECK(inertial_bound(inertia(fam(Family::orthogonality, {4}))).value == Rational(4));
    CHECK(inertial_bound(inertia(fam(Family::folded_cube, {7}))).value == Rational(32, 11));
    CHECK(inertial_bound(inertia(fam(Family::cycle, {5}))).target == Target::xi);

    CHECK(weaker_inertial_bound(inertia(fam(Family::folded_cube, {5}))).value == Rational(16, 5));
    CHECK(weaker_inertial_bound(inertia(fam(Family::orthogonality, {4}))).value == Rational(8, 5));
    CHECK(weaker_inertial_bound(inertia(ts::petersen_drawing())).value == Rational(5, 2));
    CHECK(weaker_inertial_bound(inertia(fam(Family::cycle, {5}))).target == Target::xi_f);

    const auto e = inertial_bound(inertia(empty_graph(3)));
    CHECK(e.value == 1);
    CHECK(e.status == BoundStatus::degenerate);
}

TEST_CASE("weaker inertial never exceeds inertial, with equality iff nonsingular") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const Graph g = ts::random_graph(2 + i % 10, 0.5, rng);
        if (g.size() == 0) continue;
        const auto s = inertia(g);
        const auto in = inertial_bound(s).value, weak = weaker_inertial_bound(s).value;
        CHECK(weak <= in);
        CHECK((weak == in) == (s.inertia.zero == 0));
    }
}

TEST_CASE("bounds never exceed the chromatic number") {
    for (const auto& g : ts::connected_corpus(150, 8, 99)) {
        const auto b = bounds_of(g);
        const int chi = ts::subset_chromatic(g);
        CHECK(b.hoffman.value <= chi + 1e-9);
        CHECK(b.lima.value <= chi + 1e-9);
        CHECK(b.kolotilina.value <= chi + 1e-9);
        CHECK(b.inertial.value <= Rational(chi));
        CHECK(std::abs(b.generalized.at("E=0").value - b.hoffman.value) < 1e-9);
        CHECK(std::abs(b.generalized.at("E=D").value - b.kolotilina.value) < 1e-9);
    }
}

TEST_CASE("weighted Hoffman search") {
    SECTION("K2 is scale invariant") {
        const Graph k2 = fam(Family::complete, {2});
        for (double w : {0.01, 1.0, 7.5}) {
            EdgeWeights ew;
            ew.set(0, 1, w);
            CHECK(std::abs(weighted_hoffman_value(k2, ew) - 2.0) < 1e-12);
        }
    }
    SECTION("scale invariance on random weights") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.1, 3.0);
        const Graph g = ts::petersen_drawing();
        EdgeWeights w;
        for (auto [v, x] : g.edges()) w.set(v, x, cplx(u(rng), u(rng) - 1.5));
        const double base = weighted_hoffman_value(g, w);
        for (double c : {1e-3, 0.5, 40.0}) CHECK(std::abs(weighted_hoffman_value(g, w.scaled(c)) - base) < 1e-10);
    }
    SECTION("C5 stays at sqrt 5") {
        const auto r = optimize_weighted_hoffman(fam(Family::cycle, {5}), 1, 150, {20, false});
        CHECK(r.value >= kSqrt5 - 1e-9);
        CHECK(r.value <= kSqrt5 + 1e-6);
        CHECK(std::abs(weighted_hoffman_value(fam(Family::cycle, {5}), r.weights) - r.value) < 1e-12);
    }
    SECTION("never below the unweighted value and deterministic in the seed") {
        const Graph p = ts::petersen_drawing();
        const auto a = optimize_weighted_hoffman(p, 5, 60);
        const auto b = optimize_weighted_hoffman(p, 5, 60);
        CHECK(a.value >= 2.5 - 1e-9);
        CHECK(a.value == b.value);
        CHECK(a.weights == b.weights);
        std::mt19937_64 rng(8);
        for (int i = 0; i < 20; ++i) {
            const Graph g = ts::random_graph(3 + i % 6, 0.6, rng);
            if (g.size() == 0) continue;
            const auto r = optimize_weighted_hoffman(g, i, 40, {2, i % 2 == 1});
            CHECK(r.value >= hoffman_bound(inertia(g)).value - 1e-9);
            CHECK(r.value <= ts::subset_chromatic(g) + 1e-9);
        }
    }
}

TEST_CASE("regular graphs collapse the three eigenvalue bounds") {
    for (const auto& spec : std::vector<FamilySpec>{{Family::cycle, {7}},
                                                    {Family::kneser, {6, 2}},
                                                    {Family::andrasfai, {4}},
                                                    {Family::folded_cube, {5}},
                                                    {Family::orthogonality, {4}},
                                                    {Family::complete_bipartite, {3, 3}}}) {
        const auto b = bounds_of(generate(spec));
        CHECK(std::abs(b.hoffman.value - b.lima.value) < 1e-8);
        CHECK(std::abs(b.hoffman.value - b.kolotilina.value) < 1e-8);
    }
}

TEST_CASE("battery on an edgeless graph flags instead of throwing") {
    const auto b = bounds_of(empty_graph(4));
    CHECK(b.hoffman.status == BoundStatus::degenerate);
    CHECK(b.lima.status == BoundStatus::degenerate);
    CHECK(b.kolotilina.value == 1.0);
    CHECK(b.inertial.value == 1);
    CHECK(b.weaker_inertial.value == 1);
}
