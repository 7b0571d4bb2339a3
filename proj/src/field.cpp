#include "apnspectra/field.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace apnspectra {

namespace {

// ---- polynomial arithmetic over GF(2) on bit masks (degree <= 48) ----

int poly_degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    int dm = poly_degree(m);
    for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) {
        a ^= m << (d - dm);
    }
    return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return poly_mod(poly_mul(a, b), m);
}

// x^(2^e) mod m by repeated squaring of the running residue.
std::uint64_t poly_x_pow_pow2(int e, std::uint64_t m) {
    std::uint64_t r = 2;  // x
    for (int i = 0; i < e; ++i) r = poly_mulmod(r, r, m);
    return r;
}

// Rabin irreducibility test for a monic degree-n polynomial over GF(2).
bool poly_irreducible(std::uint64_t p, int n) {
    if (poly_degree(p) != n) return false;
    if ((p & 1) == 0) return false;  // divisible by x
    if (poly_x_pow_pow2(n, p) != 2) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (!prime) continue;
        std::uint64_t h = poly_x_pow_pow2(n / q, p) ^ 2;  // x^(2^(n/q)) - x
        if (poly_gcd(h, p) != 1) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t m) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

}  // namespace

FieldSpec::FieldSpec(int n, std::uint32_t poly)
    : n_(n), poly_(poly), order_((std::uint64_t(1) << n) - 1) {
    order_factors_ = factorize(order_);
}

std::uint32_t FieldSpec::mul_clmul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t r = poly_mul(a, b);
    return std::uint32_t(poly_mod(r, poly_));
}

void FieldSpec::build_tables() {
    // trace mask: bit i set iff Tr(x^i) = 1, via the conjugate sum.
    for (int i = 0; i < n_; ++i) {
        std::uint32_t basis = std::uint32_t(1) << i;
        std::uint32_t acc = 0, conj = basis;
        for (int j = 0; j < n_; ++j) {
            acc ^= conj;
            conj = mul_clmul(conj, conj);
        }
        if (acc & 1) trace_mask_ |= basis;  // acc must be 0 or 1 here
    }

    if (n_ <= kTableDegreeCap) {
        log_.assign(field_size(), 0);
        exp_.assign(order_, 0);
        std::uint32_t v = 1;
        for (std::uint64_t i = 0; i < order_; ++i) {
            exp_[i] = v;
            log_[v] = std::uint32_t(i);
            v = mul_clmul(v, alpha_);
        }
    }
}

std::uint64_t FieldSpec::mult_order(std::uint32_t a) const {
    if (a == 0) return 0;
    std::uint64_t t = order_;
    for (const auto& [p, e] : order_factors_) {
        for (int i = 0; i < e; ++i) {
            std::uint64_t cand = t / p;
            // pow without table (may be called before tables exist)
            std::uint32_t r = 1, base = a;
            std::uint64_t ee = cand;
            while (ee) {
                if (ee & 1) r = mul_clmul(r, base);
                base = mul_clmul(base, base);
                ee >>= 1;
            }
            if (r == 1) t = cand; else break;
        }
    }
    return t;
}

bool FieldSpec::is_primitive_raw(std::uint32_t a) const {
    if (a == 0) return false;
    return mult_order(a) == order_;
}

FieldPtr FieldSpec::make(int n, std::optional<std::uint32_t> poly_override) {
    if (n < kMinDegree || n > kMaxDegree)
        throw std::invalid_argument("degree must be in [2, 24], got " + std::to_string(n));

    std::uint32_t poly = 0;
    if (poly_override) {
        poly = *poly_override;
        if (poly_degree(poly) != n)
            throw std::invalid_argument("override polynomial must have degree exactly " +
                                        std::to_string(n));
        if (!poly_irreducible(poly, n))
            throw ReduciblePolynomial("override polynomial " + to_hex(poly) +
                                      " is reducible over GF(2)");
    } else {
        // smallest primitive polynomial: masks in increasing order are the
        // coefficient vectors in lexicographic order (all are monic).
        std::uint32_t lo = (std::uint32_t(1) << n) | 1;
        std::uint32_t hi = std::uint32_t(1) << (n + 1);
        for (std::uint32_t cand = lo; cand < hi; cand += 2) {
            if (!poly_irreducible(cand, n)) continue;
            FieldSpec probe(n, cand);
            if (probe.mult_order(2) == probe.order_) { poly = cand; break; }
        }
    }

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec(n, poly));
    if (spec->mult_order(2) == spec->order_) {
        spec->alpha_ = 2;  // the residue of x
    } else {
        for (std::uint32_t a = 3; a < spec->field_size(); ++a) {
            if (spec->mult_order(a) == spec->order_) { spec->alpha_ = a; break; }
        }
    }
    spec->build_tables();
    return spec;
}

FieldPtr make_field(int n, std::optional<std::uint32_t> poly_override) {
    return FieldSpec::make(n, poly_override);
}

FieldElement FieldSpec::element(std::uint32_t bits) const {
    if (bits >= field_size())
        throw std::invalid_argument("element " + to_hex(bits) + " out of range for GF(2^" +
                                    std::to_string(n_) + ")");
    return {bits, this};
}

std::uint32_t FieldSpec::inv_raw(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (!log_.empty()) {
        std::uint64_t e = (order_ - log_[a]) % order_;
        return exp_[e];
    }
    return pow_raw(a, std::int64_t(order_) - 1);
}

std::uint32_t FieldSpec::pow_raw(std::uint32_t a, std::int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e > 0) return 0;
        throw DivisionByZero("zero raised to a negative power");
    }
    std::int64_t m = std::int64_t(order_);
    std::int64_t r = e % m;
    if (r < 0) r += m;
    if (!log_.empty()) {
        std::uint64_t le = (std::uint64_t(log_[a]) * std::uint64_t(r)) % order_;
        return exp_[le];
    }
    std::uint32_t res = 1, base = a;
    std::uint64_t ee = std::uint64_t(r);
    while (ee) {
        if (ee & 1) res = mul_raw(res, base);
        base = mul_raw(base, base);
        ee >>= 1;
    }
    return res;
}

std::uint32_t FieldSpec::frobenius_raw(std::uint32_t a, int i) const {
    int r = ((i % n_) + n_) % n_;
    std::uint32_t v = a;
    for (int j = 0; j < r; ++j) v = mul_raw(v, v);
    return v;
}

std::uint32_t FieldSpec::rel_trace_raw(std::uint32_t a, int k) const {
    if (k <= 0 || n_ % k != 0)
        throw InvalidSubfield(std::to_string(k) + " does not divide " + std::to_string(n_));
    std::uint32_t acc = 0, conj = a;
    for (int j = 0; j < n_ / k; ++j) {
        acc ^= conj;
        conj = frobenius_raw(conj, k);
    }
    return acc;
}

bool FieldSpec::in_subfield(std::uint32_t a, int k) const {
    if (k <= 0 || n_ % k != 0)
        throw InvalidSubfield(std::to_string(k) + " does not divide " + std::to_string(n_));
    return frobenius_raw(a, k) == a;
}

// ---- checked element ops ----

namespace {
const FieldSpec& common_spec(const FieldElement& a, const FieldElement& b) {
    if (!a.spec || !b.spec) throw FieldMismatch("element without a field");
    if (!a.spec->same(*b.spec)) throw FieldMismatch("elements belong to different fields");
    return *a.spec;
}
const FieldSpec& spec_of(const FieldElement& a) {
    if (!a.spec) throw FieldMismatch("element without a field");
    return *a.spec;
}
}  // namespace

bool FieldElement::operator==(const FieldElement& o) const {
    return bits == o.bits && spec && o.spec && spec->same(*o.spec);
}

FieldElement add(FieldElement a, FieldElement b) {
    const auto& f = common_spec(a, b);
    return {f.add_raw(a.bits, b.bits), a.spec};
}

FieldElement mul(FieldElement a, FieldElement b) {
    const auto& f = common_spec(a, b);
    return {f.mul_raw(a.bits, b.bits), a.spec};
}

FieldElement inv(FieldElement a) { return {spec_of(a).inv_raw(a.bits), a.spec}; }

FieldElement pow(FieldElement a, std::int64_t e) {
    return {spec_of(a).pow_raw(a.bits, e), a.spec};
}

FieldElement frobenius(FieldElement a, int i) {
    return {spec_of(a).frobenius_raw(a.bits, i), a.spec};
}

int trace(FieldElement a) { return spec_of(a).trace_raw(a.bits); }

FieldElement rel_trace(FieldElement a, int k) {
    return {spec_of(a).rel_trace_raw(a.bits, k), a.spec};
}

bool is_primitive(FieldElement a) { return spec_of(a).is_primitive_raw(a.bits); }

std::string to_hex(std::uint32_t bits) {
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << bits;
    return os.str();
}

std::uint32_t parse_hex(const std::string& text) {
    std::string t = text;
    if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t = t.substr(2);
    if (t.empty()) throw std::invalid_argument("empty hex value");
    std::uint64_t v = 0;
    for (char c : t) {
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad hex digit in '" + text + "'");
        v = (v << 4) | std::uint64_t(std::stoul(std::string(1, c), nullptr, 16));
        if (v > 0xFFFFFFFFull) throw std::invalid_argument("hex value too large: " + text);
    }
    return std::uint32_t(v);
}

}  // namespace apnspectra
