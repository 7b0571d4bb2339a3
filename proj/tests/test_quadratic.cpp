#include <doctest.h>

#include <random>
#include <set>

#include "apnspectra/analysis.hpp"
#include "apnspectra/quadratic.hpp"
#include "oracle.hpp"

using namespace apnspectra;

TEST_CASE("bilinear form basics") {
    auto f = make_field(5);
    auto cube = build_family(default_params(Family::Gold, 5), f);
    for (std::uint32_t x = 0; x < 32; ++x) {
        CHECK(bilinear_form(cube, 0, x) == 0);
        CHECK(bilinear_form(cube, x, x) == 0);  // alternating
    }
    // B(u, x) = u x^2 + u^2 x for the cube map
    for (std::uint32_t u = 0; u < 32; ++u)
        for (std::uint32_t x = 0; x < 32; ++x) {
            std::uint32_t want = f->mul_raw(u, f->mul_raw(x, x)) ^
                                 f->mul_raw(f->mul_raw(u, u), x);
            REQUIRE(bilinear_form(cube, u, x) == want);
        }
}

TEST_CASE("is_quadratic") {
    auto f = make_field(5);
    CHECK(is_quadratic(build_family(default_params(Family::Gold, 5), f)));
    CHECK(is_quadratic(tabulate(SparsePoly(f, {{1, 2}}))));  // linear counts too
    CHECK_FALSE(is_quadratic(tabulate(SparsePoly(f, {{1, 7}}))));  // degree 3
    std::mt19937 rng(5);
    FunctionTable rnd;
    rnd.spec = f;
    for (int i = 0; i < 32; ++i) rnd.values.push_back(rng() % 32);
    CHECK_FALSE(is_quadratic(rnd));
}

TEST_CASE("kernel of a linear map is everything") {
    auto f = make_field(4);
    auto sq = tabulate(SparsePoly(f, {{1, 2}}));
    auto m = kernel_map_generic(sq, 3);
    CHECK(m.kernel_dim() == 4);
    CHECK(m.rank() == 0);
}

TEST_CASE("gold kernels have dimension 1 for every b") {
    auto f = make_field(5);
    auto cube = build_family(default_params(Family::Gold, 5), f);
    for (std::uint32_t b = 1; b < 32; ++b) {
        auto m = kernel_map_generic(cube, b);
        REQUIRE(m.kernel_dim() == 1);
        REQUIRE(m.rank() + m.kernel_dim() == 5);
    }
    CHECK_THROWS_AS(kernel_map_generic(cube, 0), ZeroComponent);
    auto cube7 = tabulate(SparsePoly(f, {{1, 7}}));
    CHECK_THROWS_AS(kernel_map_generic(cube7, 1), NotQuadratic);
}

TEST_CASE("kernel basis agrees with exhaustive enumeration") {
    auto f = make_field(6);
    auto t = build_family(default_params(Family::F5, 6), f);
    for (std::uint32_t b = 1; b < 64; ++b) {
        auto m = kernel_map_generic(t, b);
        std::set<std::uint32_t> brute;
        for (std::uint32_t u = 0; u < 64; ++u)
            if (m.apply(u) == 0) brute.insert(u);
        auto listed = m.kernel_elements();
        REQUIRE(std::set<std::uint32_t>(listed.begin(), listed.end()) == brute);
    }
}

TEST_CASE("explicit L_b matches the generic construction") {
    for (int n : {3, 6}) {
        auto f = make_field(n);
        auto fp = default_params(Family::F5, n);
        auto t = build_family(fp, f);
        for (std::uint32_t b = 1; b < f->field_size(); ++b) {
            auto ex = lb_explicit_f5(fp, f, b);
            CHECK(ex.apply(0) == 0);
            CHECK(ex.rank() + ex.kernel_dim() == n);
            auto ge = kernel_map_generic(t, b, false);
            REQUIRE(ex.kernel_elements() == ge.kernel_elements());
        }
    }
}

TEST_CASE("explicit L_b rejects bad input") {
    auto f = make_field(6);
    auto fp = default_params(Family::F5, 6);
    CHECK_THROWS_AS(lb_explicit_f5(fp, f, 0), ZeroComponent);
    auto f9 = make_field(9);
    CHECK_THROWS_AS(lb_explicit_f5(default_params(Family::F5, 9), f9, 1), InvalidParams);
}

TEST_CASE("squared transform identity") {
    auto f = make_field(6);
    auto t = build_family(default_params(Family::F5, 6), f);
    for (std::uint32_t b = 1; b < 64; ++b)
        for (std::uint32_t a = 0; a < 64; ++a) {
            auto [lhs, rhs] = squared_transform_identity(t, a, b);
            REQUIRE(lhs == rhs);
        }

    // Gold at n=5: |K| = 2 forces rhs into {0, 2^(n+1)}
    auto f5 = make_field(5);
    auto cube = build_family(default_params(Family::Gold, 5), f5);
    for (std::uint32_t b = 1; b < 32; ++b)
        for (std::uint32_t a = 0; a < 32; ++a) {
            auto [lhs, rhs] = squared_transform_identity(cube, a, b);
            REQUIRE(lhs == rhs);
            REQUIRE((rhs == 0 || rhs == 64));
        }
}

TEST_CASE("proof trace holds for every b at n=3 and n=6") {
    for (int n : {3, 6}) {
        auto f = make_field(n);
        auto fp = default_params(Family::F5, n);
        for (std::uint32_t b = 1; b < f->field_size(); ++b) {
            auto tr = proof_trace_f5(fp, f, b);
            INFO("n=", n, " b=", b);
            REQUIRE(tr.all_pass());
            require_proof_trace(tr);  // must not throw
            REQUIRE(tr.theta_bar_nonzero);
            REQUIRE(tr.p_nonzero);
            REQUIRE(tr.p_in_subfield);
            REQUIRE(tr.z_in_subfield);
            REQUIRE(tr.d_nonzero);
            REQUIRE(tr.kernel_dim <= 2);
        }
    }
}

TEST_CASE("proof trace rejects bad input") {
    auto f = make_field(6);
    CHECK_THROWS_AS(proof_trace_f5(default_params(Family::F5, 6), f, 0), ZeroComponent);
    auto f9 = make_field(9);
    CHECK_THROWS_AS(proof_trace_f5(default_params(Family::F5, 9), f9, 1), InvalidParams);
}

TEST_CASE("failed checks surface through CheckFailure") {
    ProofTrace tr;
    tr.b = 1;
    tr.theta_bar_nonzero = true;
    tr.p_nonzero = false;  // forged failure
    tr.p_in_subfield = tr.z_in_subfield = tr.d_nonzero = true;
    tr.kernel_bound = tr.t_image_bound = true;
    CHECK_THROWS_AS(require_proof_trace(tr), CheckFailure);
}

TEST_CASE("linearized root counting stays within the 2^d bound") {
    auto f = make_field(5);
    // p = x: only root is 0
    CHECK(linearized_root_count(SparsePoly(f, {{1, 1}}), 1) == 1);
    // p = x^2 + x: roots are the subfield GF(2)
    CHECK(linearized_root_count(SparsePoly(f, {{1, 2}, {1, 1}}), 1) == 2);

    CHECK_THROWS_AS(linearized_root_count(SparsePoly(f, {{1, 3}}), 1), InvalidShape);
    auto f6 = make_field(6);
    CHECK_THROWS_AS(linearized_root_count(SparsePoly(f6, {{1, 2}}), 2), GcdViolation);

    // random degree-2 instances stay within the bound
    auto f7 = make_field(7);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Term> terms;
        for (int i = 0; i <= 2; ++i) {
            std::uint32_t c = rng() % 128;
            if (i == 2 && c == 0) c = 1;
            terms.push_back({c, std::uint64_t(1) << ((3 * i) % 7)});
        }
        auto cnt = linearized_root_count(SparsePoly(f7, terms), 3);
        REQUIRE(cnt <= 4);
    }
}
