#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apnspectra/families.hpp"
#include "apnspectra/poly.hpp"

namespace apnspectra {

/// A GF(2)-linear map on L, stored columnwise in the polynomial basis:
/// image[j] is the image of the basis element x^j.
struct LinearizedMap {
    int n = 0;
    std::vector<std::uint32_t> image;
    std::string provenance;  // "explicit-L_b" | "bilinear-generic"

    std::uint32_t apply(std::uint32_t u) const;
    std::vector<std::uint32_t> kernel_basis() const;  // bit-matrix nullspace
    int kernel_dim() const { return int(kernel_basis().size()); }
    int rank() const { return n - kernel_dim(); }
    /// All kernel elements, sorted ascending.
    std::vector<std::uint32_t> kernel_elements() const;
};

/// Symmetrized biadditive form f(x+u)+f(x)+f(u)+f(0).
std::uint32_t bilinear_form(const FunctionTable& f, std::uint32_t u, std::uint32_t x);

/// Exact degree <= 2 test: the second derivative along every basis pair is
/// constant in x.
bool is_quadratic(const FunctionTable& f);

/// The n x n bit matrix M with M[i][j] = Tr(b B_f(e_j, e_i)); its kernel is
/// exactly {u : Tr(b B_f(u, x)) = 0 for all x}.
LinearizedMap kernel_map_generic(const FunctionTable& f, std::uint32_t b);

/// Same map without re-running the quadraticity check (bulk per-b sweeps
/// verify once up front).
LinearizedMap kernel_map_generic(const FunctionTable& f, std::uint32_t b,
                                 bool check_quadratic);

/// The closed-form 8-term linearized polynomial L_b of the quadranomial
/// family, as a matrix.
LinearizedMap lb_explicit_f5(const FamilyParams& fp, FieldPtr spec, std::uint32_t b);

/// lhs = walsh_point(f,a,b)^2, rhs = 2^n sum over the kernel of
/// (-1)^Tr(au + b f(u)); they must agree for quadratic f.
std::pair<std::int64_t, std::int64_t> squared_transform_identity(const FunctionTable& f,
                                                                 std::uint32_t a,
                                                                 std::uint32_t b);

/// All named quantities of the quadranomial kernel-bound argument for one b,
/// with per-kernel-element equation checks.
struct ProofTrace {
    std::uint32_t b = 0;
    std::uint32_t theta = 0;
    std::uint32_t theta_bar = 0;  // theta + theta^(2^-k)
    std::uint32_t z = 0;
    std::uint32_t big_b = 0;
    std::uint32_t big_d = 0;
    std::uint32_t p_theta = 0;
    int kernel_dim = 0;

    struct KernelRecord {
        std::uint32_t u = 0;
        std::uint32_t t = 0;
        std::uint32_t r = 0;
        bool conj_relation = false;
        bool t_substitution = false;
        bool r_substitution = false;
        bool trace_t = false;
        bool trace_r = false;
    };
    std::vector<KernelRecord> kernel;

    bool theta_bar_nonzero = false;
    bool p_nonzero = false;
    bool p_in_subfield = false;
    bool z_in_subfield = false;
    bool d_nonzero = false;
    bool kernel_bound = false;      // dim <= 2
    std::size_t t_image_values = 0; // |{t(u)+t(u)^(2^k) : u in K}|
    bool t_image_bound = false;     // <= 2 for odd n, <= 4 for even n

    std::vector<std::string> failed_checks() const;
    bool all_pass() const { return failed_checks().empty(); }
};

ProofTrace proof_trace_f5(const FamilyParams& fp, FieldPtr spec, std::uint32_t b);

/// Throws CheckFailure naming every failed claim/equation.
void require_proof_trace(const ProofTrace& trace);

/// Exhaustive zero count of a linearized polynomial with exponents
/// 2^(s i), i = 0..d; requires (s, n) = 1. Lemma bound: count <= 2^d.
std::uint64_t linearized_root_count(const SparsePoly& p, int s);

}  // namespace apnspectra
