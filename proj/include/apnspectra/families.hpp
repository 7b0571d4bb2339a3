#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apnspectra/poly.hpp"

namespace apnspectra {

enum class Family { F1, F2, F3, F4, F5, Gold, Dillon };

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

/// Parameters of one family instance. Unset optional elements default to
/// the field's canonical primitive element; i and m, when negative, are
/// derived from the family congruences.
struct FamilyParams {
    Family family = Family::Gold;
    int k = 0;
    int s = 0;
    int i = -1;
    int m = -1;
    int d = 1;                           // Gold exponent
    std::uint32_t v = 0;                 // F5, in GF(2^k)
    std::uint32_t w = 0;                 // F5, in GF(2^k)
    std::vector<std::uint32_t> gammas;   // F3, gamma_1..gamma_{k-1} in GF(2^k)
    std::optional<std::uint32_t> t;      // F1/F2: alpha = t^(2^k - 1), t primitive
    std::optional<std::uint32_t> beta;   // F3
    std::optional<std::uint32_t> u_elem; // Dillon

    std::string describe() const;
};

/// Smallest valid parameter choice for the family at degree n (v = w = 0,
/// all gammas 0, t = beta = u = alpha). May be invalid when the family has
/// no instance at n; validate_params reports that.
FamilyParams default_params(Family fam, int n);

/// Complete list of violated family constraints; empty means valid.
std::vector<std::string> validate_params(const FamilyParams& fp, const FieldSpec& spec);

/// The exact defining polynomial of the instance, with every 2^(-k)-style
/// exponent resolved through the inverse Frobenius and reduced mod 2^n - 1.
SparsePoly family_poly(const FamilyParams& fp, FieldPtr spec);

/// Validates, assembles and tabulates; throws InvalidParams on violations.
FunctionTable build_family(const FamilyParams& fp, FieldPtr spec);

}  // namespace apnspectra
