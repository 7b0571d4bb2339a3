#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apnspectra/errors.hpp"

namespace apnspectra {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// A polynomial-basis residue of GF(2^n), packed into a machine word
/// (bit i = coefficient of x^i). Carries a non-owning reference to its
/// field; mixing elements of different fields is rejected.
struct FieldElement {
    std::uint32_t bits = 0;
    const FieldSpec* spec = nullptr;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

/// A concrete realization of GF(2^n): degree, irreducible reduction
/// polynomial, canonical primitive element. Immutable after construction
/// and safe to share across threads; every operation is a pure function.
///
/// Elements are exposed both as raw packed words (the *_raw methods, used
/// by the hot loops) and as checked FieldElement values.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    static constexpr int kMinDegree = 2;
    static constexpr int kMaxDegree = 24;
    static constexpr int kTableDegreeCap = 20;  // log/antilog tables below this size

    /// Builds GF(2^n). Without an override the reduction polynomial is the
    /// lexicographically smallest primitive polynomial of degree n, so
    /// alpha is the residue of x. An override must be irreducible of
    /// degree n; if x is not primitive modulo it, alpha is found by
    /// exhaustive order search.
    static FieldPtr make(int n, std::optional<std::uint32_t> poly_override = std::nullopt);

    int degree() const { return n_; }
    std::uint32_t reduction_poly() const { return poly_; }
    std::uint64_t order() const { return order_; }  // 2^n - 1
    std::uint32_t field_size() const { return std::uint32_t(1) << n_; }
    std::uint32_t alpha_bits() const { return alpha_; }
    FieldElement alpha() const { return {alpha_, this}; }

    /// prime -> exponent of the factorization of 2^n - 1.
    const std::vector<std::pair<std::uint64_t, int>>& order_factorization() const {
        return order_factors_;
    }

    FieldElement element(std::uint32_t bits) const;
    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }

    bool same(const FieldSpec& other) const {
        return n_ == other.n_ && poly_ == other.poly_;
    }

    // ---- raw operations on packed representations ----

    std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

    /// Reduced carry-less product; uses the log/antilog fast path when built.
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
        if (!log_.empty()) {
            if (a == 0 || b == 0) return 0;
            std::uint64_t e = std::uint64_t(log_[a]) + log_[b];
            if (e >= order_) e -= order_;
            return exp_[e];
        }
        return mul_clmul(a, b);
    }

    /// Shift-add reference multiplier, table-free.
    std::uint32_t mul_clmul(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t inv_raw(std::uint32_t a) const;

    /// Exponent reduced mod 2^n - 1 for nonzero bases (negative exponents
    /// allowed); pow(0, e) = 0 for e > 0 and 1 for e = 0.
    std::uint32_t pow_raw(std::uint32_t a, std::int64_t e) const;

    /// a^(2^(i mod n)); negative i is the inverse Frobenius.
    std::uint32_t frobenius_raw(std::uint32_t a, int i) const;

    /// Absolute trace to GF(2), as 0/1.
    int trace_raw(std::uint32_t a) const {
        return __builtin_popcount(a & trace_mask_) & 1;
    }

    /// Relative trace onto GF(2^k); requires k | n.
    std::uint32_t rel_trace_raw(std::uint32_t a, int k) const;

    std::uint64_t mult_order(std::uint32_t a) const;
    bool is_primitive_raw(std::uint32_t a) const;

    /// True iff a lies in the subfield GF(2^k) (requires k | n).
    bool in_subfield(std::uint32_t a, int k) const;

private:
    FieldSpec(int n, std::uint32_t poly);
    void build_tables();

    int n_;
    std::uint32_t poly_;
    std::uint64_t order_;
    std::uint32_t alpha_ = 0;
    std::uint32_t trace_mask_ = 0;  // trace(a) = parity(a & trace_mask_)
    std::vector<std::pair<std::uint64_t, int>> order_factors_;
    std::vector<std::uint32_t> log_;  // log_[a] for a != 0; alpha-based
    std::vector<std::uint32_t> exp_;  // exp_[i] = alpha^i, i in [0, order)
};

FieldPtr make_field(int n, std::optional<std::uint32_t> poly_override = std::nullopt);

// ---- checked element-level operations ----

FieldElement add(FieldElement a, FieldElement b);
FieldElement mul(FieldElement a, FieldElement b);
FieldElement inv(FieldElement a);
FieldElement pow(FieldElement a, std::int64_t e);
FieldElement frobenius(FieldElement a, int i);
int trace(FieldElement a);
FieldElement rel_trace(FieldElement a, int k);
bool is_primitive(FieldElement a);

/// Hexadecimal rendering of an element / reduction polynomial bit mask.
std::string to_hex(std::uint32_t bits);
std::uint32_t parse_hex(const std::string& text);

}  // namespace apnspectra
