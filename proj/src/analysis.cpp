#include "apnspectra/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <random>
#include <thread>

namespace apnspectra {

std::int64_t WalshSpectrum::max_abs() const {
    std::int64_t m = 0;
    for (const auto& [v, c] : counts) m = std::max(m, v < 0 ? -v : v);
    return m;
}

std::vector<std::int64_t> WalshSpectrum::value_set() const {
    std::vector<std::int64_t> out;
    for (const auto& [v, c] : counts) out.push_back(v);
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("APNSPECTRA_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

std::vector<int> component_signs(const FunctionTable& f, std::uint32_t b) {
    if (b == 0) throw ZeroComponent("b must be nonzero");
    const FieldSpec& F = *f.spec;
    std::vector<int> signs(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x)
        signs[x] = F.trace_raw(F.mul_raw(b, f.at(x))) ? -1 : 1;
    return signs;
}

std::int64_t walsh_point(const FunctionTable& f, std::uint32_t a, std::uint32_t b) {
    if (b == 0) throw ZeroComponent("b must be nonzero");
    const FieldSpec& F = *f.spec;
    std::int64_t acc = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        int bit = F.trace_raw(F.mul_raw(a, x) ^ F.mul_raw(b, f.at(x)));
        acc += bit ? -1 : 1;
    }
    return acc;
}

namespace {

void fwht(std::vector<std::int64_t>& v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                std::int64_t x = v[j], y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

std::vector<std::int64_t> signs_transformed(const FunctionTable& f, std::uint32_t b) {
    const FieldSpec& F = *f.spec;
    std::vector<std::int64_t> v(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x)
        v[x] = F.trace_raw(F.mul_raw(b, f.at(x))) ? -1 : 1;
    fwht(v);
    return v;  // v[m] = sum_x (-1)^(<m,x> + Tr(b f(x)))
}

// a -> bit vector m with <m, x> = Tr(a x) for all x (the trace-dual map).
std::vector<std::uint32_t> dual_map(const FieldSpec& F) {
    const std::uint32_t size = std::uint32_t(1) << F.degree();
    std::vector<std::uint32_t> dual_basis(F.degree());
    for (int i = 0; i < F.degree(); ++i) {
        std::uint32_t m = 0;
        for (int j = 0; j < F.degree(); ++j) {
            std::uint32_t prod = F.mul_raw(std::uint32_t(1) << i, std::uint32_t(1) << j);
            if (F.trace_raw(prod)) m |= std::uint32_t(1) << j;
        }
        dual_basis[i] = m;
    }
    std::vector<std::uint32_t> dual(size, 0);
    for (std::uint32_t a = 1; a < size; ++a)
        dual[a] = dual[a & (a - 1)] ^ dual_basis[std::countr_zero(a)];
    return dual;
}

}  // namespace

std::vector<std::int64_t> walsh_row(const FunctionTable& f, std::uint32_t b) {
    if (b == 0) throw ZeroComponent("b must be nonzero");
    auto h = signs_transformed(f, b);
    auto dual = dual_map(*f.spec);
    std::vector<std::int64_t> row(f.size());
    for (std::uint32_t a = 0; a < f.size(); ++a) row[a] = h[dual[a]];
    return row;
}

namespace {

WalshSpectrum spectrum_over(const FunctionTable& f, const std::vector<std::uint32_t>& bs,
                            int threads) {
    WalshSpectrum sp;
    sp.n = f.degree();
    const int nt = std::min<int>(resolve_threads(threads), std::max<std::size_t>(bs.size(), 1));

    std::vector<std::map<std::int64_t, std::uint64_t>> local(nt);
    auto worker = [&](int tid) {
        auto& counts = local[tid];
        for (std::size_t idx = tid; idx < bs.size(); idx += nt) {
            auto h = signs_transformed(f, bs[idx]);
            for (std::int64_t v : h) ++counts[v];
        }
    };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (auto& m : local)
        for (const auto& [v, c] : m) sp.counts[v] += c;
    return sp;
}

}  // namespace

WalshSpectrum full_spectrum(const FunctionTable& f, int threads) {
    std::vector<std::uint32_t> bs;
    bs.reserve(f.size() - 1);
    for (std::uint32_t b = 1; b < f.size(); ++b) bs.push_back(b);
    return spectrum_over(f, bs, threads);
}

WalshSpectrum sampled_spectrum(const FunctionTable& f, std::size_t sample_b,
                               std::uint64_t seed, int threads) {
    if (sample_b > f.size() - 1)
        throw std::invalid_argument("sample size exceeds |L*|");
    std::vector<std::uint32_t> all;
    for (std::uint32_t b = 1; b < f.size(); ++b) all.push_back(b);
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(sample_b);
    std::sort(all.begin(), all.end());
    auto sp = spectrum_over(f, all, threads);
    sp.sampled_b = std::move(all);
    return sp;
}

std::int64_t nonlinearity(const WalshSpectrum& sp) {
    if (sp.counts.empty()) throw std::invalid_argument("empty spectrum");
    return (std::int64_t(1) << (sp.n - 1)) - sp.max_abs() / 2;
}

namespace {

DiffSpectrum diff_over(const FunctionTable& f, const std::vector<std::uint32_t>& rows,
                       int threads) {
    const std::uint32_t size = f.size();
    const int nt = std::min<int>(resolve_threads(threads), std::max<std::size_t>(rows.size(), 1));

    struct Local {
        std::map<std::uint32_t, std::uint64_t> hist;
        std::uint32_t max_count = 0;
    };
    std::vector<Local> local(nt);
    auto worker = [&](int tid) {
        std::vector<std::uint32_t> cnt(size);
        auto& L = local[tid];
        for (std::size_t idx = tid; idx < rows.size(); idx += nt) {
            const std::uint32_t a = rows[idx];
            std::fill(cnt.begin(), cnt.end(), 0);
            for (std::uint32_t x = 0; x < size; ++x) ++cnt[f.at(x) ^ f.at(x ^ a)];
            for (std::uint32_t c : cnt) {
                ++L.hist[c];
                L.max_count = std::max(L.max_count, c);
            }
        }
    };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    DiffSpectrum ds;
    for (auto& L : local) {
        for (const auto& [c, m] : L.hist) ds.counts[c] += m;
        ds.max_count = std::max(ds.max_count, L.max_count);
    }
    return ds;
}

}  // namespace

DiffSpectrum diff_spectrum(const FunctionTable& f, int threads) {
    std::vector<std::uint32_t> rows;
    rows.reserve(f.size() - 1);
    for (std::uint32_t a = 1; a < f.size(); ++a) rows.push_back(a);
    return diff_over(f, rows, threads);
}

DiffSpectrum diff_spectrum_sampled(const FunctionTable& f, std::size_t rows,
                                   std::uint64_t seed) {
    if (rows > f.size() - 1) throw std::invalid_argument("sample size exceeds |L*|");
    std::vector<std::uint32_t> all;
    for (std::uint32_t a = 1; a < f.size(); ++a) all.push_back(a);
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(rows);
    std::sort(all.begin(), all.end());
    auto ds = diff_over(f, all, 0);
    ds.sampled_a = std::move(all);
    return ds;
}

}  // namespace apnspectra
