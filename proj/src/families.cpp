#include "apnspectra/families.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace apnspectra {

std::string family_name(Family f) {
    switch (f) {
        case Family::F1: return "f1";
        case Family::F2: return "f2";
        case Family::F3: return "f3";
        case Family::F4: return "f4";
        case Family::F5: return "f5";
        case Family::Gold: return "gold";
        case Family::Dillon: return "dillon";
    }
    return "?";
}

std::optional<Family> parse_family(const std::string& name) {
    std::string s;
    for (char c : name) s += char(std::tolower(static_cast<unsigned char>(c)));
    if (s == "f1") return Family::F1;
    if (s == "f2") return Family::F2;
    if (s == "f3") return Family::F3;
    if (s == "f4") return Family::F4;
    if (s == "f5") return Family::F5;
    if (s == "gold") return Family::Gold;
    if (s == "dillon") return Family::Dillon;
    return std::nullopt;
}

std::string FamilyParams::describe() const {
    std::ostringstream os;
    os << "family=" << family_name(family);
    switch (family) {
        case Family::F1:
        case Family::F2:
            os << " k=" << k << " s=" << s << " i=" << i << " m=" << m;
            if (t) os << " t=" << to_hex(*t);
            break;
        case Family::F3:
            os << " k=" << k << " s=" << s;
            if (beta) os << " beta=" << to_hex(*beta);
            for (std::size_t j = 0; j < gammas.size(); ++j)
                os << " gamma" << (j + 1) << "=" << to_hex(gammas[j]);
            break;
        case Family::F4:
            break;
        case Family::F5:
            os << " k=" << k << " s=" << s << " v=" << to_hex(v) << " w=" << to_hex(w);
            break;
        case Family::Gold:
            os << " d=" << d;
            break;
        case Family::Dillon:
            if (u_elem) os << " u=" << to_hex(*u_elem);
            break;
    }
    return os.str();
}

FamilyParams default_params(Family fam, int n) {
    FamilyParams fp;
    fp.family = fam;
    switch (fam) {
        case Family::F1:
            fp.k = (n % 3 == 0) ? n / 3 : 0;
            fp.s = 1;
            break;
        case Family::F2:
            fp.k = (n % 4 == 0) ? n / 4 : 0;
            fp.s = 1;
            break;
        case Family::F3:
            fp.k = (n % 2 == 0) ? n / 2 : 0;
            fp.s = 1;
            break;
        case Family::F4:
            break;
        case Family::F5: {
            fp.k = (n % 3 == 0) ? n / 3 : 0;
            fp.s = 0;
            for (int s = 1; s <= 3 * fp.k; ++s) {
                if (std::gcd(s, 3 * fp.k) == 1 && (fp.k + s) % 3 == 0) { fp.s = s; break; }
            }
            break;
        }
        case Family::Gold:
            fp.d = 1;
            break;
        case Family::Dillon:
            break;
    }
    return fp;
}

namespace {

void derive_indices(FamilyParams& fp) {
    if (fp.family == Family::F1) {
        if (fp.i < 0) fp.i = ((fp.s * fp.k) % 3 + 3) % 3;
        if (fp.m < 0) fp.m = (3 - fp.i % 3) % 3;
    } else if (fp.family == Family::F2) {
        if (fp.i < 0) fp.i = ((fp.s * fp.k) % 4 + 4) % 4;
        if (fp.m < 0) fp.m = 4 - fp.i;
    }
}

}  // namespace

std::vector<std::string> validate_params(const FamilyParams& fp_in, const FieldSpec& spec) {
    std::vector<std::string> out;
    const int n = spec.degree();
    FamilyParams fp = fp_in;
    derive_indices(fp);
    auto alpha = spec.alpha_bits();

    auto check_subfield = [&](std::uint32_t c, const std::string& what) {
        if (fp.k > 0 && n % fp.k == 0 && !spec.in_subfield(c, fp.k))
            out.push_back(what + " not in GF(2^" + std::to_string(fp.k) + ")");
    };

    switch (fp.family) {
        case Family::F1: {
            if (fp.k <= 0 || n != 3 * fp.k) out.push_back("n = 3k");
            if (std::gcd(fp.k, 3) != 1) out.push_back("(k,3) = 1");
            if (fp.s <= 0 || std::gcd(fp.s, 3 * fp.k) != 1) out.push_back("(s,3k) = 1");
            if (fp.k < 3) out.push_back("k >= 3");
            if (((fp.i - fp.s * fp.k) % 3 + 3) % 3 != 0) out.push_back("i = sk mod 3");
            if (((fp.m + fp.i) % 3 + 3) % 3 != 0) out.push_back("m = -i mod 3");
            std::uint32_t t = fp.t.value_or(alpha);
            if (!spec.is_primitive_raw(t)) out.push_back("t is primitive");
            break;
        }
        case Family::F2: {
            if (fp.k <= 0 || n != 4 * fp.k) out.push_back("n = 4k");
            if (std::gcd(fp.k, 2) != 1) out.push_back("(k,2) = 1");
            if (fp.s <= 0 || std::gcd(fp.s, 2 * fp.k) != 1) out.push_back("(s,2k) = 1");
            if (fp.k < 3) out.push_back("k >= 3");
            if (((fp.i - fp.s * fp.k) % 4 + 4) % 4 != 0) out.push_back("i = sk mod 4");
            if (fp.m != 4 - fp.i) out.push_back("m = 4 - i");
            std::uint32_t t = fp.t.value_or(alpha);
            if (!spec.is_primitive_raw(t)) out.push_back("t is primitive");
            break;
        }
        case Family::F3: {
            if (fp.k <= 0 || n != 2 * fp.k) out.push_back("n = 2k");
            if (fp.s <= 0 || std::gcd(fp.k, fp.s) != 1) out.push_back("(k,s) = 1");
            if (fp.k % 2 != 1) out.push_back("k is odd");
            if (fp.s % 2 != 1) out.push_back("s is odd");
            if (!spec.is_primitive_raw(alpha)) out.push_back("alpha is primitive");
            std::uint32_t beta = fp.beta.value_or(alpha);
            if (!spec.is_primitive_raw(beta)) out.push_back("beta is primitive");
            if (int(fp.gammas.size()) > fp.k - 1)
                out.push_back("at most k-1 gamma coefficients");
            for (std::size_t j = 0; j < fp.gammas.size(); ++j)
                check_subfield(fp.gammas[j], "gamma_" + std::to_string(j + 1));
            break;
        }
        case Family::F4:
            break;
        case Family::F5: {
            if (fp.k <= 0 || n != 3 * fp.k) out.push_back("n = 3k");
            if (fp.s <= 0 || std::gcd(fp.s, 3 * fp.k) != 1) out.push_back("(s,3k) = 1");
            if (std::gcd(3, fp.k) != 1) out.push_back("(3,k) = 1");
            if ((fp.k + fp.s) % 3 != 0) out.push_back("3 divides k+s");
            if (!spec.is_primitive_raw(alpha)) out.push_back("alpha is primitive");
            check_subfield(fp.v, "v");
            check_subfield(fp.w, "w");
            if (fp.k > 0 && n % fp.k == 0 && spec.mul_raw(fp.v, fp.w) == 1)
                out.push_back("vw != 1");
            break;
        }
        case Family::Gold:
            if (fp.d <= 0 || std::gcd(fp.d, n) != 1) out.push_back("(d,n) = 1");
            break;
        case Family::Dillon: {
            if (n != 6) out.push_back("n = 6");
            std::uint32_t u = fp.u_elem.value_or(alpha);
            if (n == 6 && !spec.is_primitive_raw(u)) out.push_back("u is primitive");
            break;
        }
    }
    return out;
}

SparsePoly family_poly(const FamilyParams& fp_in, FieldPtr spec) {
    const int n = spec->degree();
    FamilyParams fp = fp_in;
    derive_indices(fp);
    const std::uint32_t alpha = spec->alpha_bits();
    // 2^(e mod n): the integer exponent of one Frobenius power
    auto p2 = [&](int e) -> std::uint64_t {
        return std::uint64_t(1) << (((e % n) + n) % n);
    };

    std::vector<Term> terms;
    switch (fp.family) {
        case Family::F1:
        case Family::F2: {
            std::uint32_t t = fp.t.value_or(alpha);
            std::uint32_t a = spec->pow_raw(t, (std::int64_t(1) << fp.k) - 1);
            terms.push_back({1, p2(fp.s) + 1});
            terms.push_back({a, p2(fp.i * fp.k) + p2(fp.m * fp.k + fp.s)});
            break;
        }
        case Family::F3: {
            std::uint32_t beta = fp.beta.value_or(alpha);
            terms.push_back({alpha, p2(fp.s) + 1});
            terms.push_back({spec->frobenius_raw(alpha, fp.k), p2(fp.k + fp.s) + p2(fp.k)});
            terms.push_back({beta, p2(fp.k) + 1});
            for (std::size_t j = 0; j < fp.gammas.size(); ++j) {
                int i = int(j) + 1;
                terms.push_back({fp.gammas[j], p2(fp.k + i) + p2(i)});
            }
            break;
        }
        case Family::F4: {
            // x^3 + Tr(x^9), the trace expanded to sum of conjugate exponents
            terms.push_back({1, 3});
            for (int j = 0; j < n; ++j) terms.push_back({1, std::uint64_t(9) << j});
            break;
        }
        case Family::F5: {
            std::uint32_t ak = spec->frobenius_raw(alpha, fp.k);
            terms.push_back({ak, p2(-fp.k) + p2(fp.k + fp.s)});
            terms.push_back({alpha, p2(fp.s) + 1});
            terms.push_back({fp.v, p2(-fp.k) + 1});
            terms.push_back({spec->mul_raw(fp.w, spec->mul_raw(ak, alpha)),
                             p2(fp.k + fp.s) + p2(fp.s)});
            break;
        }
        case Family::Gold:
            terms.push_back({1, p2(fp.d) + 1});
            break;
        case Family::Dillon: {
            std::uint32_t u = fp.u_elem.value_or(alpha);
            std::uint32_t u11 = spec->pow_raw(u, 11);
            std::uint32_t u13 = spec->pow_raw(u, 13);
            terms.push_back({1, 3});
            terms.push_back({u11, 5});
            terms.push_back({u13, 9});
            terms.push_back({1, 17});
            terms.push_back({u11, 33});
            terms.push_back({1, 48});
            break;
        }
    }
    return SparsePoly(std::move(spec), std::move(terms));
}

FunctionTable build_family(const FamilyParams& fp, FieldPtr spec) {
    auto violations = validate_params(fp, *spec);
    if (!violations.empty()) throw InvalidParams(std::move(violations));
    FamilyParams derived = fp;
    derive_indices(derived);
    return tabulate(family_poly(derived, spec), derived.describe());
}

}  // namespace apnspectra
