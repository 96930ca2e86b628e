#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "orthorank/certificate_io.hpp"
#include "orthorank/representation.hpp"
#include "support.hpp"

using namespace orthorank;
namespace ts = testing_support;

#ifndef ORTHORANK_FIXTURE_DIR
#define ORTHORANK_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

Graph fam(Family f, std::vector<int> p) { return generate({f, std::move(p)}); }

SearchConfig quick_config() {
    SearchConfig cfg;
    cfg.restarts = 32;
    cfg.max_iters = 2000;
    return cfg;
}

nlohmann::json load_fixture(const std::string& name) {
    std::ifstream in(std::string(ORTHORANK_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

/// Max |x_v^dagger x_w| over edges, written out in long hand.
double plain_residual(const Graph& g, const std::vector<Vector>& x) {
    double r = 0.0;
    for (auto [v, w] : g.edges()) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < x[v].size(); ++i) s += std::conj(x[v][i]) * x[w][i];
        r = std::max(r, std::abs(s));
    }
    return r;
}

} // namespace

TEST_CASE("search finds representations where they exist") {
    const auto cfg = quick_config();
    const Graph c5 = fam(Family::cycle, {5});
    const auto rep = search_ortho_rep(c5, 3, cfg);
    REQUIRE(rep);
    CHECK(rep->residual < 1e-9);
    CHECK(plain_residual(c5, rep->vectors) < 1e-9);
    for (const auto& x : rep->vectors) CHECK(std::abs(norm2<cplx>(x) - 1.0) < 1e-10);
    CHECK_FALSE(search_ortho_rep(c5, 2, cfg));

    const auto om = search_ortho_rep(fam(Family::orthogonality, {4}), 4, cfg);
    REQUIRE(om);
    CHECK(om->residual < 1e-9);
}

TEST_CASE("alternating updates never increase the objective") {
    std::vector<double> trace;
    auto cfg = quick_config();
    cfg.restarts = 1;
    for (const auto& spec : std::vector<FamilySpec>{{Family::kneser, {5, 2}}, {Family::andrasfai, {3}}}) {
        trace.clear();
        search_ortho_rep(generate(spec), 3, cfg, &trace);
        REQUIRE(trace.size() > 2);
        for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
    }
}

TEST_CASE("search is deterministic in the seed") {
    auto cfg = quick_config();
    cfg.seed = 42;
    const Graph g = fam(Family::kneser, {5, 2});
    CHECK(search_ortho_rep(g, 3, cfg) == search_ortho_rep(g, 3, cfg));
}

TEST_CASE("normalized search") {
    auto cfg = quick_config();
    const auto k2 = search_normalized_rep(fam(Family::complete, {2}), 2, cfg);
    REQUIRE(k2);
    CHECK(k2->normalized);
    for (const auto& x : k2->vectors)
        for (const auto& e : x) CHECK(std::abs(std::abs(e) - 1.0 / std::sqrt(2.0)) < 1e-12);
    const Graph c5 = fam(Family::cycle, {5});
    const auto c = search_normalized_rep(c5, 3, cfg);
    REQUIRE(c);
    CHECK(verify_representation(c5, *c).valid);
    const Graph k3 = fam(Family::complete, {3});
    const auto f = search_normalized_rep(k3, 3, cfg);
    REQUIRE(f);
    CHECK(verify_representation(k3, *f).valid);
}

TEST_CASE("orthogonality graph labels are a certificate") {
    const Graph g = fam(Family::orthogonality, {4});
    const auto rep = orthogonality_certificate(4);
    CHECK(rep.residual == 0.0);
    const auto ver = verify_representation(g, rep);
    CHECK(ver.valid);
    CHECK(satisfies_inertial_inequality(4, inertia(g).inertia));
}

TEST_CASE("xi interval") {
    const auto cfg = quick_config();
    const auto c5 = xi_interval(fam(Family::cycle, {5}), cfg);
    CHECK(c5.lower_exact == Rational(5, 2));
    CHECK(c5.lower_ceiling == 3);
    CHECK(c5.upper == 3);
    const auto k = xi_interval(fam(Family::kneser, {5, 2}), cfg);
    CHECK(k.lower == Catch::Approx(2.5));
    CHECK(k.upper == 3);
    const auto k4 = xi_interval(fam(Family::complete, {4}), cfg);
    CHECK(k4.lower_ceiling == 4);
    CHECK(k4.upper == 4);
}

TEST_CASE("verification rejects broken certificates") {
    const Graph c5 = fam(Family::cycle, {5});
    auto rep = *search_ortho_rep(c5, 3, quick_config());
    CHECK(verify_representation(c5, rep).valid);
    auto bad = rep;
    bad.vectors[0][0] += 1e-2;
    CHECK_FALSE(verify_representation(c5, bad).valid);
    auto zero = rep;
    for (auto& e : zero.vectors[1]) e = 0.0;
    CHECK_FALSE(verify_representation(c5, zero).valid);
    auto short_rep = rep;
    short_rep.vectors.pop_back();
    CHECK_FALSE(verify_representation(c5, short_rep).valid);
    auto fake_normalized = rep;
    fake_normalized.normalized = true;
    CHECK_FALSE(verify_representation(c5, fake_normalized).valid);
}

TEST_CASE("unitary invariance") {
    const Graph g = fam(Family::kneser, {5, 2});
    const auto rep = *search_ortho_rep(g, 3, quick_config());
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        const auto u = random_unitary(3, rng);
        CHECK(max_abs(u.adjoint() * u - ComplexMatrix::identity(3)) < 1e-12);
        auto moved = rep;
        for (auto& x : moved.vectors) {
            Vector y(3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t k = 0; k < 3; ++k) y[i] += u(i, k) * x[k];
            x = y;
        }
        const auto v = verify_representation(g, moved);
        CHECK(v.valid);
        CHECK(std::abs(v.residual - verify_representation(g, rep).residual) < 1e-10);
    }
}

TEST_CASE("first-entry normalization and the conversion identity") {
    SECTION("K2 standard basis needs a rotation") {
        const Graph k2 = fam(Family::complete, {2});
        const OrthoRepresentation rep{2, {{1.0, 0.0}, {0.0, 1.0}}, 0.0, false};
        const auto nr = normalize_first_entries(k2, rep, 1);
        for (const auto& x : nr.vectors) CHECK(x[0] == cplx(1.0));
        CHECK(verify_conversion_identity(k2, nr) < 1e-12);
    }
    SECTION("rescale-only path keeps the vectors' directions") {
        const Graph k2 = fam(Family::complete, {2});
        const double s = 1.0 / std::sqrt(2.0);
        const OrthoRepresentation rep{2, {{s, s}, {s, -s}}, 0.0, false};
        const auto nr = normalize_first_entries(k2, rep, 1);
        CHECK(nr.vectors[0] == Vector{1.0, 1.0});
        CHECK(nr.vectors[1] == Vector{1.0, -1.0});
    }
    SECTION("searched certificates satisfy the identity, corrupted ones do not") {
        const Graph c5 = fam(Family::cycle, {5});
        const auto rep = *search_ortho_rep(c5, 3, quick_config());
        const auto nr = normalize_first_entries(c5, rep, 9);
        CHECK(verify_conversion_identity(c5, nr) < 1e-8);
        auto bad = nr;
        bad.vectors[2][1] += 1e-2;
        CHECK(verify_conversion_identity(c5, bad) > 1e-4);
        auto wrong_first = nr;
        wrong_first.vectors[0][0] = 2.0;
        CHECK_THROWS_AS(verify_conversion_identity(c5, wrong_first), ValidationError);
    }
}

TEST_CASE("d/r representations") {
    SECTION("K3 standard basis is 3/1") {
        const Graph k3 = fam(Family::complete, {3});
        const auto rep = colouring_certificate(k3, {0, 1, 2});
        const auto r = verify_dr_representation(k3, rep);
        CHECK(r.valid);
        CHECK(r.ratio == 3);
    }
    SECTION("C5 pairs of coordinates give 5/2") {
        const Graph c5 = fam(Family::cycle, {5});
        const auto rep = odd_cycle_certificate(2);
        // vertex v projects onto e_{2v}, e_{2v+1} (mod 5)
        for (int v = 0; v < 5; ++v) {
            CHECK(rep.projectors[v]((2 * v) % 5, (2 * v) % 5) == cplx(1.0));
            CHECK(rep.projectors[v]((2 * v + 1) % 5, (2 * v + 1) % 5) == cplx(1.0));
        }
        const auto r = verify_dr_representation(c5, rep);
        CHECK(r.valid);
        CHECK(r.ratio == Rational(5, 2));
        const auto in = inertia(c5).inertia;
        CHECK(satisfies_projective_bound(r.ratio, in));
        CHECK(satisfies_conjectured_bound(r.ratio, in));
    }
    SECTION("Kneser and colouring certificates") {
        const Graph k = fam(Family::kneser, {6, 2});
        const auto r = verify_dr_representation(k, kneser_certificate(6, 2));
        CHECK(r.valid);
        CHECK(r.ratio == 3);
        const Graph c7 = fam(Family::cycle, {7});
        CHECK(verify_dr_representation(c7, odd_cycle_certificate(3)).valid);
        CHECK(verify_dr_representation(c7, colouring_certificate(c7, {0, 1, 0, 1, 0, 1, 2})).valid);
        CHECK_FALSE(verify_dr_representation(c7, colouring_certificate(c7, {0, 1, 0, 1, 0, 1, 0})).valid);
    }
    SECTION("rank mismatch is reported") {
        const Graph k3 = fam(Family::complete, {3});
        auto rep = colouring_certificate(k3, {0, 1, 2});
        rep.rank = 2;
        const auto r = verify_dr_representation(k3, rep);
        CHECK_FALSE(r.valid);
        CHECK_FALSE(r.diagnostics.empty());
    }
    SECTION("orthogonal representations become rank-one projectors") {
        const Graph c5 = fam(Family::cycle, {5});
        const auto rep = *search_ortho_rep(c5, 3, quick_config());
        CHECK(verify_dr_representation(c5, to_projectors(rep)).valid);
    }
    SECTION("shape errors throw") {
        const Graph k3 = fam(Family::complete, {3});
        auto rep = colouring_certificate(k3, {0, 1, 2});
        rep.projectors.pop_back();
        CHECK_THROWS_AS(verify_dr_representation(k3, rep), ValidationError);
    }
}

TEST_CASE("certificates found by search respect the inertia inequality") {
    const auto cfg = quick_config();
    for (const auto& g : ts::connected_corpus(40, 8, 606)) {
        const auto xi = xi_interval(g, cfg);
        if (!xi.upper) continue;
        const auto in = inertia(g).inertia;
        CHECK(satisfies_inertial_inequality(*xi.upper, in));
        CHECK(verify_representation(g, *xi.certificate).valid);
    }
}

TEST_CASE("certificate JSON round trip is bit exact") {
    const Graph c5 = fam(Family::cycle, {5});
    const auto rep = *search_ortho_rep(c5, 3, quick_config());
    const auto text = to_json(c5, rep).dump();
    const auto back = certificate_from_json(nlohmann::json::parse(text));
    CHECK(back.graph == c5);
    CHECK(std::get<OrthoRepresentation>(back.certificate) == rep);
    CHECK(to_json(back.graph, std::get<OrthoRepresentation>(back.certificate)).dump() == text);

    const auto proj = odd_cycle_certificate(2);
    const auto back2 = certificate_from_json(nlohmann::json::parse(to_json(c5, proj).dump()));
    CHECK(std::get<ProjectorRepresentation>(back2.certificate) == proj);
}

TEST_CASE("fixtures") {
    SECTION("C5 5/2 fixture validates and regenerates byte for byte") {
        const auto j = load_fixture("c5_5_2.json");
        const auto cert = certificate_from_json(j);
        const auto& rep = std::get<ProjectorRepresentation>(cert.certificate);
        const auto r = verify_dr_representation(cert.graph, rep);
        CHECK(r.valid);
        CHECK(r.ratio == Rational(5, 2));
        CHECK(satisfies_projective_bound(r.ratio, inertia(cert.graph).inertia));
        CHECK(to_json(fam(Family::cycle, {5}), odd_cycle_certificate(2)) == j);
    }
    SECTION("orthogonality(4) fixture") {
        const auto cert = certificate_from_json(load_fixture("omega4_ortho.json"));
        CHECK(verify_representation(cert.graph, std::get<OrthoRepresentation>(cert.certificate)).valid);
    }
    SECTION("corrupted fixtures are rejected") {
        const auto rank = certificate_from_json(load_fixture("c5_5_2_rank_mismatch.json"));
        CHECK_FALSE(verify_dr_representation(rank.graph, std::get<ProjectorRepresentation>(rank.certificate)).valid);
        const auto overlap = certificate_from_json(load_fixture("c5_5_2_overlap.json"));
        CHECK_FALSE(
            verify_dr_representation(overlap.graph, std::get<ProjectorRepresentation>(overlap.certificate)).valid);
        const auto ortho = certificate_from_json(load_fixture("c5_ortho_perturbed.json"));
        CHECK_FALSE(verify_representation(ortho.graph, std::get<OrthoRepresentation>(ortho.certificate)).valid);
        CHECK_THROWS_AS(certificate_from_json(load_fixture("malformed.json")), ValidationError);
    }
}
