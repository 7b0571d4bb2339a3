#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "apnspectra/field.hpp"

namespace apnspectra {

/// One monomial coeff * x^exp of a univariate polynomial over L.
struct Term {
    std::uint32_t coeff = 0;
    std::uint64_t exp = 0;
};

/// A sparse univariate polynomial over GF(2^n), normalized for
/// evaluation-on-L semantics: no zero coefficients, exponents strictly
/// increasing, exponents > 0 reduced into [1, 2^n - 1] (x^(2^n - 1) and
/// x^0 differ at x = 0 and are kept distinct), like terms merged by XOR.
class SparsePoly {
public:
    SparsePoly(FieldPtr spec, std::vector<Term> terms);

    const FieldPtr& spec() const { return spec_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::uint32_t eval_raw(std::uint32_t x) const;
    FieldElement eval(FieldElement x) const;

    std::string render() const;
    static SparsePoly parse(const std::string& text, FieldPtr spec);

private:
    FieldPtr spec_;
    std::vector<Term> terms_;
};

/// Full value table of f on all 2^n points; values[i] = f(element(i)).
struct FunctionTable {
    FieldPtr spec;
    std::vector<std::uint32_t> values;
    std::string provenance;  // family tag + parameters, or a polynomial text

    std::uint32_t at(std::uint32_t x) const { return values[x]; }
    std::uint32_t size() const { return std::uint32_t(values.size()); }
    int degree() const { return spec->degree(); }
};

FunctionTable tabulate(const SparsePoly& p, const std::string& provenance = "");

/// hex-per-line table format; import validates line count and range.
void export_table(const FunctionTable& f, std::ostream& os);
FunctionTable import_table(std::istream& is, FieldPtr spec);

}  // namespace apnspectra
