#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "apnspectra/poly.hpp"

namespace apnspectra {

/// Exact multiset of Fourier transform values over a in L, b in L*.
struct WalshSpectrum {
    int n = 0;
    bool includes_a_zero = true;  // a sweeps all of L, b only L*
    std::map<std::int64_t, std::uint64_t> counts;  // value -> multiplicity, ascending
    std::optional<std::vector<std::uint32_t>> sampled_b;  // set when b was sampled

    std::int64_t max_abs() const;
    std::vector<std::int64_t> value_set() const;
};

/// Histogram of derivative-equation solution counts over all (a, b), a != 0.
struct DiffSpectrum {
    std::map<std::uint32_t, std::uint64_t> counts;  // solution count -> #(a,b) pairs
    std::uint32_t max_count = 0;                    // the differential uniformity
    std::optional<std::vector<std::uint32_t>> sampled_a;

    bool is_apn() const { return max_count == 2; }
};

/// sign[x] = (-1)^Tr(b f(x)); requires b != 0.
std::vector<int> component_signs(const FunctionTable& f, std::uint32_t b);

/// Direct-summation transform value, exact; the reference path.
std::int64_t walsh_point(const FunctionTable& f, std::uint32_t a, std::uint32_t b);

/// All transform values for one b, entry a = walsh_point(f, a, b), via the
/// in-place fast butterfly; agrees exactly with the direct path.
std::vector<std::int64_t> walsh_row(const FunctionTable& f, std::uint32_t b);

/// Aggregates walsh_row over all b in L*. threads = 0 picks a default from
/// APNSPECTRA_THREADS or hardware concurrency; the result is identical for
/// any worker count.
WalshSpectrum full_spectrum(const FunctionTable& f, int threads = 0);

/// Spectrum over a deterministic seeded sample of distinct b values.
WalshSpectrum sampled_spectrum(const FunctionTable& f, std::size_t sample_b,
                               std::uint64_t seed, int threads = 0);

/// NL(f) = 2^(n-1) - max|value| / 2.
std::int64_t nonlinearity(const WalshSpectrum& sp);

DiffSpectrum diff_spectrum(const FunctionTable& f, int threads = 0);

/// Differential spectrum restricted to a seeded sample of rows a != 0.
DiffSpectrum diff_spectrum_sampled(const FunctionTable& f, std::size_t rows,
                                   std::uint64_t seed);

int resolve_threads(int requested);

}  // namespace apnspectra
