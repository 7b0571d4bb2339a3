#include <doctest.h>

#include <random>

#include "apnspectra/analysis.hpp"
#include "apnspectra/families.hpp"
#include "oracle.hpp"

using namespace apnspectra;

namespace {

FunctionTable random_table(const FieldPtr& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FunctionTable t;
    t.spec = f;
    t.provenance = "random";
    for (std::uint32_t x = 0; x < f->field_size(); ++x)
        t.values.push_back(std::uint32_t(rng()) % f->field_size());
    return t;
}

}  // namespace

TEST_CASE("component_signs") {
    auto f = make_field(3);
    auto zero = tabulate(SparsePoly(f, {}));
    CHECK_THROWS_AS(component_signs(zero, 0), ZeroComponent);
    auto s = component_signs(zero, 1);
    for (int v : s) CHECK(v == 1);

    auto cube = build_family(default_params(Family::Gold, 3), f);
    auto sc = component_signs(cube, 1);
    int neg = 0;
    for (int v : sc) neg += v < 0;
    CHECK(neg == 4);  // x^3 permutes GF(8), trace is balanced

    auto ident = tabulate(SparsePoly(f, {{1, 1}}));
    auto si = component_signs(ident, f->alpha_bits());
    neg = 0;
    for (int v : si) neg += v < 0;
    CHECK(neg == 4);
}

TEST_CASE("walsh_point") {
    auto f = make_field(3);
    auto zero = tabulate(SparsePoly(f, {}));
    CHECK(walsh_point(zero, 1, 1) == 0);
    CHECK(walsh_point(zero, 0, 1) == 8);
    auto cube = build_family(default_params(Family::Gold, 3), f);
    CHECK(walsh_point(cube, 0, 1) == 0);  // bijection: balanced trace sum
    CHECK_THROWS_AS(walsh_point(cube, 0, 0), ZeroComponent);
}

TEST_CASE("walsh_row equals the direct path entrywise") {
    for (int n : {3, 4, 5, 6, 7, 8}) {
        auto f = make_field(n);
        std::vector<FunctionTable> fs;
        fs.push_back(build_family(default_params(Family::Gold, n), f));
        fs.push_back(random_table(f, 1000 + n));
        for (const auto& t : fs) {
            for (std::uint32_t b = 1; b < f->field_size(); ++b) {
                auto row = walsh_row(t, b);
                for (std::uint32_t a = 0; a < f->field_size(); ++a)
                    REQUIRE(row[a] == walsh_point(t, a, b));
            }
        }
    }
}

TEST_CASE("walsh_row direct path matches the double-loop oracle") {
    auto f = make_field(4);
    auto t = random_table(f, 99);
    for (std::uint32_t b = 1; b < 16; ++b)
        for (std::uint32_t a = 0; a < 16; ++a)
            REQUIRE(walsh_point(t, a, b) ==
                    oracle::walsh(t.values, a, b, f->reduction_poly(), 4));
}

TEST_CASE("per-b row identities") {
    for (int n : {3, 5, 6, 8}) {
        auto f = make_field(n);
        for (auto t : {build_family(default_params(Family::Gold, n), f),
                       random_table(f, 55 + n)}) {
            for (std::uint32_t b = 1; b < f->field_size(); ++b) {
                auto row = walsh_row(t, b);
                std::int64_t sum = 0, sumsq = 0;
                for (auto v : row) { sum += v; sumsq += v * v; }
                // Parseval
                REQUIRE(sumsq == std::int64_t(1) << (2 * n));
                // column sum picks out x = 0
                int sign0 = f->trace_raw(f->mul_raw(b, t.at(0))) ? -1 : 1;
                REQUIRE(sum == sign0 * (std::int64_t(1) << n));
            }
        }
    }
}

TEST_CASE("full_spectrum of family 5") {
    auto f6 = make_field(6);
    auto sp6 = full_spectrum(build_family(default_params(Family::F5, 6), f6));
    CHECK(sp6.value_set() == std::vector<std::int64_t>{-16, -8, 0, 8, 16});
    std::uint64_t total = 0;
    for (auto [v, c] : sp6.counts) total += c;
    CHECK(total == 64ull * 63ull);

    auto f3 = make_field(3);
    auto sp3 = full_spectrum(build_family(default_params(Family::F5, 3), f3));
    CHECK(sp3.value_set() == std::vector<std::int64_t>{-4, 0, 4});
}

TEST_CASE("dillon spectrum takes seven distinct values") {
    auto f = make_field(6, 0x5B);  // the representation with u = alpha APN
    auto sp = full_spectrum(build_family(default_params(Family::Dillon, 6), f));
    CHECK(sp.counts.size() == 7);
}

TEST_CASE("quadratic spectra are 0 mod 4") {
    auto f = make_field(6);
    for (auto fam : {Family::F5, Family::Gold, Family::F4, Family::Dillon}) {
        auto sp = full_spectrum(build_family(default_params(fam, 6), f));
        for (auto [v, c] : sp.counts) CHECK(v % 4 == 0);
    }
}

TEST_CASE("nonlinearity") {
    WalshSpectrum sp;
    sp.n = 5;
    sp.counts = {{-8, 1}, {0, 3}, {8, 1}};
    CHECK(nonlinearity(sp) == 12);

    auto f = make_field(6);
    auto sp6 = full_spectrum(build_family(default_params(Family::F5, 6), f));
    CHECK(nonlinearity(sp6) == 24);

    auto zero = tabulate(SparsePoly(f, {}));
    CHECK(nonlinearity(full_spectrum(zero)) == 0);
}

TEST_CASE("gold functions are AB for odd n") {
    for (int n : {3, 5, 7}) {
        auto f = make_field(n);
        auto sp = full_spectrum(build_family(default_params(Family::Gold, n), f));
        std::int64_t peak = std::int64_t(1) << ((n + 1) / 2);
        CHECK(sp.value_set() == std::vector<std::int64_t>{-peak, 0, peak});
    }
}

TEST_CASE("diff_spectrum") {
    auto f4 = make_field(4);
    auto ds = diff_spectrum(build_family(default_params(Family::Gold, 4), f4));
    CHECK(ds.max_count == 2);
    CHECK(ds.is_apn());
    CHECK(ds.max_count == oracle::diff_uniformity(
              build_family(default_params(Family::Gold, 4), f4).values));

    // linear map: one derivative value hit by everything
    auto sq = tabulate(SparsePoly(f4, {{1, 2}}));
    CHECK(diff_spectrum(sq).max_count == 16);

    auto f6 = make_field(6);
    CHECK(diff_spectrum(build_family(default_params(Family::F5, 6), f6)).is_apn());
}

TEST_CASE("diff_spectrum counts are even and rows sum to 2^n") {
    auto f = make_field(5);
    auto t = random_table(f, 77);
    auto ds = diff_spectrum(t);
    std::uint64_t weighted = 0, pairs = 0;
    for (auto [c, m] : ds.counts) {
        CHECK(c % 2 == 0);
        weighted += std::uint64_t(c) * m;
        pairs += m;
    }
    CHECK(weighted == 31ull * 32ull);  // each of 31 rows sums to 2^n
    CHECK(pairs == 31ull * 32ull);     // one histogram cell per (a, b)
}

TEST_CASE("spectrum is identical across worker counts") {
    auto f = make_field(8);
    auto t = build_family(default_params(Family::Gold, 8), f);
    auto s1 = full_spectrum(t, 1);
    auto s4 = full_spectrum(t, 4);
    auto s7 = full_spectrum(t, 7);
    CHECK(s1.counts == s4.counts);
    CHECK(s1.counts == s7.counts);

    auto d1 = diff_spectrum(t, 1);
    auto d4 = diff_spectrum(t, 4);
    CHECK(d1.counts == d4.counts);
    CHECK(d1.max_count == d4.max_count);
}

TEST_CASE("sampled spectrum is seed-deterministic") {
    auto f = make_field(8);
    auto t = build_family(default_params(Family::Gold, 8), f);
    auto a = sampled_spectrum(t, 32, 42, 1);
    auto b = sampled_spectrum(t, 32, 42, 4);
    CHECK(a.counts == b.counts);
    REQUIRE(a.sampled_b.has_value());
    CHECK(*a.sampled_b == *b.sampled_b);
    auto c = sampled_spectrum(t, 32, 43);
    CHECK(*a.sampled_b != *c.sampled_b);
    CHECK_THROWS_AS(sampled_spectrum(t, 256, 1), std::invalid_argument);
}
