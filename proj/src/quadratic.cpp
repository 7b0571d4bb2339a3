#include "apnspectra/quadratic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "apnspectra/analysis.hpp"

namespace apnspectra {

std::uint32_t LinearizedMap::apply(std::uint32_t u) const {
    std::uint32_t acc = 0;
    while (u) {
        acc ^= image[std::countr_zero(u)];
        u &= u - 1;
    }
    return acc;
}

std::vector<std::uint32_t> LinearizedMap::kernel_basis() const {
    // eliminate the basis images, tracking the input combination of each
    std::vector<std::uint32_t> piv_img(32, 0), piv_cmb(32, 0);
    std::vector<std::uint32_t> basis;
    for (int j = 0; j < n; ++j) {
        std::uint32_t v = image[j];
        std::uint32_t c = std::uint32_t(1) << j;
        while (v) {
            int h = 31 - std::countl_zero(v);
            if (piv_img[h] == 0) {
                piv_img[h] = v;
                piv_cmb[h] = c;
                break;
            }
            v ^= piv_img[h];
            c ^= piv_cmb[h];
        }
        if (v == 0) basis.push_back(c);
    }
    return basis;
}

std::vector<std::uint32_t> LinearizedMap::kernel_elements() const {
    auto basis = kernel_basis();
    std::vector<std::uint32_t> out{0};
    for (std::uint32_t bvec : basis) {
        std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ bvec);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t bilinear_form(const FunctionTable& f, std::uint32_t u, std::uint32_t x) {
    return f.at(x ^ u) ^ f.at(x) ^ f.at(u) ^ f.at(0);
}

bool is_quadratic(const FunctionTable& f) {
    const int n = f.degree();
    const std::uint32_t size = f.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::uint32_t ei = std::uint32_t(1) << i;
            const std::uint32_t ej = std::uint32_t(1) << j;
            // second derivative along (e_i, e_j) must be constant in x
            const std::uint32_t ref = f.at(ei ^ ej) ^ f.at(ei) ^ f.at(ej) ^ f.at(0);
            for (std::uint32_t x = 0; x < size; ++x) {
                std::uint32_t d = f.at(x ^ ei ^ ej) ^ f.at(x ^ ei) ^ f.at(x ^ ej) ^ f.at(x);
                if (d != ref) return false;
            }
        }
    }
    return true;
}

LinearizedMap kernel_map_generic(const FunctionTable& f, std::uint32_t b,
                                 bool check_quadratic) {
    if (b == 0) throw ZeroComponent("b must be nonzero");
    if (check_quadratic && !is_quadratic(f))
        throw NotQuadratic("function is not quadratic: B_f fails bilinearity");
    const FieldSpec& F = *f.spec;
    const int n = f.degree();
    LinearizedMap m;
    m.n = n;
    m.image.assign(n, 0);
    m.provenance = "bilinear-generic";
    for (int j = 0; j < n; ++j) {
        std::uint32_t col = 0;
        for (int i = 0; i < n; ++i) {
            std::uint32_t bf = bilinear_form(f, std::uint32_t(1) << j, std::uint32_t(1) << i);
            if (F.trace_raw(F.mul_raw(b, bf))) col |= std::uint32_t(1) << i;
        }
        m.image[j] = col;
    }
    return m;
}

LinearizedMap kernel_map_generic(const FunctionTable& f, std::uint32_t b) {
    return kernel_map_generic(f, b, true);
}

LinearizedMap lb_explicit_f5(const FamilyParams& fp, FieldPtr spec, std::uint32_t b) {
    auto violations = validate_params(fp, *spec);
    if (!violations.empty()) throw InvalidParams(std::move(violations));
    if (b == 0) throw ZeroComponent("b must be nonzero");

    const FieldSpec& F = *spec;
    const int n = F.degree();
    const int k = fp.k, s = fp.s;
    const std::uint32_t alpha = F.alpha_bits();
    auto p2 = [&](int e) -> std::int64_t {
        return std::int64_t(1) << (((e % n) + n) % n);
    };
    auto fr = [&](std::uint32_t a, int e) { return F.frobenius_raw(a, e); };

    // the 8 terms of L_b(u), as (coefficient, Frobenius index of u)
    struct Tm { std::uint32_t c; int p; };
    std::uint32_t ws = fr(fp.w, -s);
    std::vector<Tm> terms = {
        {F.mul_raw(alpha, b), s},
        {F.mul_raw(fr(alpha, -s), fr(b, -s)), -s},
        {F.mul_raw(fr(alpha, -k), fr(b, k)), -k + s},
        {F.mul_raw(fr(alpha, -s), F.pow_raw(b, p2(-k - s))), k - s},
        {F.mul_raw(fp.v, fr(b, k)), k},
        {F.mul_raw(fp.v, b), -k},
        {F.mul_raw(F.mul_raw(ws, F.pow_raw(b, p2(-k - s))),
                   F.mul_raw(fr(alpha, -s), fr(alpha, -k - s))), -k},
        {F.mul_raw(F.mul_raw(ws, fr(b, -s)),
                   F.mul_raw(fr(alpha, k - s), fr(alpha, -s))), k},
    };

    LinearizedMap m;
    m.n = n;
    m.image.assign(n, 0);
    m.provenance = "explicit-L_b";
    for (int j = 0; j < n; ++j) {
        std::uint32_t u = std::uint32_t(1) << j;
        std::uint32_t acc = 0;
        for (const auto& t : terms) acc ^= F.mul_raw(t.c, fr(u, t.p));
        m.image[j] = acc;
    }
    return m;
}

std::pair<std::int64_t, std::int64_t> squared_transform_identity(const FunctionTable& f,
                                                                 std::uint32_t a,
                                                                 std::uint32_t b) {
    auto kmap = kernel_map_generic(f, b);  // checks b != 0 and quadraticity
    const FieldSpec& F = *f.spec;
    std::int64_t w = walsh_point(f, a, b);
    std::int64_t s = 0;
    for (std::uint32_t u : kmap.kernel_elements()) {
        int bit = F.trace_raw(F.mul_raw(a, u) ^ F.mul_raw(b, f.at(u)));
        s += bit ? -1 : 1;
    }
    return {w * w, (std::int64_t(1) << f.degree()) * s};
}

ProofTrace proof_trace_f5(const FamilyParams& fp, FieldPtr spec, std::uint32_t b) {
    auto violations = validate_params(fp, *spec);
    if (!violations.empty()) throw InvalidParams(std::move(violations));
    if (b == 0) throw ZeroComponent("b must be nonzero");

    const FieldSpec& F = *spec;
    const int n = F.degree();
    const int k = fp.k, s = fp.s;
    const std::uint32_t alpha = F.alpha_bits();
    const std::uint32_t v = fp.v, w = fp.w;
    auto p2 = [&](int e) -> std::int64_t {
        return std::int64_t(1) << (((e % n) + n) % n);
    };
    auto fr = [&](std::uint32_t a, int e) { return F.frobenius_raw(a, e); };
    auto mul = [&](std::uint32_t a, std::uint32_t c) { return F.mul_raw(a, c); };
    auto pw = [&](std::uint32_t a, std::int64_t e) { return F.pow_raw(a, e); };

    ProofTrace tr;
    tr.b = b;

    // integer exponents assembled mod 2^n - 1 before a single pow
    tr.theta = mul(fr(alpha, -s), pw(b, p2(-k) - p2(k - s)));
    tr.theta_bar = tr.theta ^ fr(tr.theta, -k);
    tr.theta_bar_nonzero = tr.theta_bar != 0;

    const std::uint32_t one_vw = std::uint32_t(1) ^ mul(v, w);
    tr.z = mul(pw(one_vw, p2(-s) - 1), pw(b, (p2(-k) + p2(k) + 1) * (p2(-s) - 1)));
    tr.z_in_subfield = F.in_subfield(tr.z, k);

    tr.big_b = mul(one_vw, pw(b, p2(k) + 1));
    tr.big_d = mul(fr(alpha, k - s), pw(tr.big_b, p2(-s) + 1)) ^
               mul(fr(alpha, -s), pw(tr.big_b, p2(-k - s) + p2(k)));
    tr.d_nonzero = tr.big_d != 0;

    tr.p_theta = F.rel_trace_raw(
        mul(pw(tr.theta, p2(s)),
            pw(tr.theta, p2(-k) + 1) ^ pw(tr.theta, p2(-k) + p2(k))),
        k);
    tr.p_nonzero = tr.p_theta != 0;
    tr.p_in_subfield = F.in_subfield(tr.p_theta, k);

    auto lb = lb_explicit_f5(fp, spec, b);
    auto kernel = lb.kernel_elements();
    tr.kernel_dim = lb.kernel_dim();
    tr.kernel_bound = tr.kernel_dim <= 2;

    const std::uint32_t bt = pw(b, p2(-s) + p2(k - s));   // b^(2^-s + 2^(k-s))
    const std::uint32_t br = pw(b, p2(k) + p2(-k));       // b^(2^k + 2^-k)
    const std::uint32_t wcoef = mul(fr(w, -s), fr(alpha, k - s));
    const std::uint32_t amk = fr(alpha, -k);

    std::set<std::uint32_t> t_images;
    for (std::uint32_t u : kernel) {
        ProofTrace::KernelRecord rec;
        rec.u = u;
        rec.t = mul(bt, fr(u, -s) ^ mul(wcoef, fr(u, k)));
        rec.r = mul(br, mul(v, fr(u, k)) ^ mul(amk, fr(u, -k + s)));

        std::uint32_t t_bar = rec.t ^ fr(rec.t, k);
        std::uint32_t r_bar = rec.r ^ fr(rec.r, k);
        t_images.insert(t_bar);

        rec.conj_relation = (r_bar ^ mul(tr.theta, t_bar)) == 0;
        rec.t_substitution = (pw(rec.t, p2(k + s)) ^ mul(w, rec.r)) ==
                  mul(mul(br, one_vw), fr(u, k));
        rec.r_substitution = (mul(v, pw(rec.t, p2(k + s))) ^ rec.r) ==
                  mul(mul(mul(br, one_vw), amk), fr(u, -k + s));
        rec.trace_t = F.rel_trace_raw(mul(tr.theta_bar, rec.t), k) == 0;
        rec.trace_r = F.rel_trace_raw(mul(pw(tr.theta, p2(k)), mul(tr.theta_bar, rec.r)), k) == 0;
        tr.kernel.push_back(rec);
    }
    tr.t_image_values = t_images.size();
    tr.t_image_bound = tr.t_image_values <= std::size_t(n % 2 ? 2 : 4);
    return tr;
}

std::vector<std::string> ProofTrace::failed_checks() const {
    std::vector<std::string> out;
    auto bhex = to_hex(b);
    if (!theta_bar_nonzero) out.push_back("b=" + bhex + ": theta + theta^(2^-k) = 0");
    if (!p_nonzero) out.push_back("b=" + bhex + ": P(theta) = 0");
    if (!p_in_subfield) out.push_back("b=" + bhex + ": P(theta) not in GF(2^k)");
    if (!z_in_subfield) out.push_back("b=" + bhex + ": z not in GF(2^k)");
    if (!d_nonzero) out.push_back("b=" + bhex + ": D = 0");
    if (!kernel_bound) out.push_back("b=" + bhex + ": kernel dimension > 2");
    if (!t_image_bound) out.push_back("b=" + bhex + ": too many t+t^(2^k) values");
    for (const auto& rec : kernel) {
        auto uhex = to_hex(rec.u);
        if (!rec.conj_relation) out.push_back("b=" + bhex + " u=" + uhex + ": conjugate-sum relation");
        if (!rec.t_substitution) out.push_back("b=" + bhex + " u=" + uhex + ": t substitution");
        if (!rec.r_substitution) out.push_back("b=" + bhex + " u=" + uhex + ": r substitution");
        if (!rec.trace_t) out.push_back("b=" + bhex + " u=" + uhex + ": relative-trace condition on t");
        if (!rec.trace_r) out.push_back("b=" + bhex + " u=" + uhex + ": relative-trace condition on r");
    }
    return out;
}

void require_proof_trace(const ProofTrace& trace) {
    auto failed = trace.failed_checks();
    if (!failed.empty()) throw CheckFailure(std::move(failed));
}

std::uint64_t linearized_root_count(const SparsePoly& p, int s) {
    const FieldSpec& F = *p.spec();
    const int n = F.degree();
    if (std::gcd(s, n) != 1)
        throw GcdViolation("(s, n) must be 1, got s=" + std::to_string(s) +
                           ", n=" + std::to_string(n));
    // s^-1 mod n, for mapping exponents 2^e back to indices i with e = s i mod n
    int sinv = 1;
    for (int c = 1; c < n; ++c)
        if ((c * (((s % n) + n) % n)) % n == 1 % n) { sinv = c; break; }
    int d = 0;
    for (const auto& t : p.terms()) {
        if (t.exp == 0 || (t.exp & (t.exp - 1)) != 0)
            throw InvalidShape("exponent " + std::to_string(t.exp) +
                               " is not of the form 2^(s i)");
        int e = std::countr_zero(t.exp);
        d = std::max(d, (e * sinv) % n);
    }
    std::uint64_t count = 0;
    for (std::uint32_t x = 0; x < F.field_size(); ++x)
        if (p.eval_raw(x) == 0) ++count;
    if (count > (std::uint64_t(1) << d))
        throw CheckFailure({"root count " + std::to_string(count) + " exceeds 2^" +
                            std::to_string(d)});
    return count;
}

}  // namespace apnspectra
