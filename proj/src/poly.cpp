#include "apnspectra/poly.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace apnspectra {

namespace {

// exponents > 0 live on the cycle [1, 2^n - 1]; exponent 0 is its own class
std::uint64_t reduce_exp(std::uint64_t e, std::uint64_t order) {
    if (e == 0) return 0;
    return (e - 1) % order + 1;
}

}  // namespace

SparsePoly::SparsePoly(FieldPtr spec, std::vector<Term> terms) : spec_(std::move(spec)) {
    std::map<std::uint64_t, std::uint32_t> acc;
    for (const auto& t : terms) {
        if (t.coeff >= spec_->field_size())
            throw std::invalid_argument("coefficient " + to_hex(t.coeff) +
                                        " out of range for GF(2^" +
                                        std::to_string(spec_->degree()) + ")");
        acc[reduce_exp(t.exp, spec_->order())] ^= t.coeff;
    }
    for (const auto& [e, c] : acc)
        if (c != 0) terms_.push_back({c, e});
}

std::uint32_t SparsePoly::eval_raw(std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (const auto& t : terms_)
        acc ^= spec_->mul_raw(t.coeff, spec_->pow_raw(x, std::int64_t(t.exp)));
    return acc;
}

FieldElement SparsePoly::eval(FieldElement x) const {
    if (!x.spec || !x.spec->same(*spec_))
        throw FieldMismatch("evaluation point from a different field");
    return {eval_raw(x.bits), x.spec};
}

std::string SparsePoly::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << "+";
        first = false;
        if (t.exp == 0) {
            os << std::hex << std::uppercase << t.coeff << std::dec;
        } else {
            if (t.coeff != 1) os << std::hex << std::uppercase << t.coeff << std::dec << "*";
            os << "x^" << t.exp;
        }
    }
    return os.str();
}

SparsePoly SparsePoly::parse(const std::string& text, FieldPtr spec) {
    std::string s;
    std::vector<std::size_t> pos_map;  // position in original text per char of s
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s += text[i];
            pos_map.push_back(i);
        }
    }
    if (s.empty()) throw ParseError("empty polynomial", 0);

    std::vector<Term> terms;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t start = i;
        std::size_t end = s.find('+', i);
        if (end == std::string::npos) end = s.size();
        std::string tok = s.substr(start, end - start);
        if (tok.empty()) throw ParseError("empty term", pos_map[std::min(start, pos_map.size() - 1)]);

        std::uint32_t coeff = 1;
        std::uint64_t exp = 0;
        std::size_t xp = tok.find('x');
        if (xp == std::string::npos) {
            // bare hex coefficient, exponent 0
            try {
                coeff = parse_hex(tok);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), pos_map[start]);
            }
        } else {
            std::string cpart = tok.substr(0, xp);
            if (!cpart.empty()) {
                if (cpart.back() != '*')
                    throw ParseError("expected '*' before x", pos_map[start + xp]);
                try {
                    coeff = parse_hex(cpart.substr(0, cpart.size() - 1));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), pos_map[start]);
                }
            }
            std::string epart = tok.substr(xp + 1);
            if (epart.empty()) {
                exp = 1;
            } else {
                if (epart[0] != '^')
                    throw ParseError("expected '^' after x", pos_map[start + xp + 1]);
                epart = epart.substr(1);
                if (epart.empty() || !std::all_of(epart.begin(), epart.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                    }))
                    throw ParseError("bad exponent", pos_map[std::min(start + xp + 2, s.size() - 1)]);
                exp = std::stoull(epart);
            }
        }
        if (coeff >= spec->field_size())
            throw ParseError("coefficient " + to_hex(coeff) + " out of field range",
                             pos_map[start]);
        terms.push_back({coeff, exp});
        i = end + 1;
        if (end == s.size()) break;
        if (i >= s.size()) throw ParseError("trailing '+'", pos_map[end]);
    }
    return SparsePoly(std::move(spec), std::move(terms));
}

FunctionTable tabulate(const SparsePoly& p, const std::string& provenance) {
    FunctionTable t;
    t.spec = p.spec();
    t.values.resize(p.spec()->field_size());
    for (std::uint32_t x = 0; x < t.values.size(); ++x) t.values[x] = p.eval_raw(x);
    t.provenance = provenance.empty() ? p.render() : provenance;
    return t;
}

void export_table(const FunctionTable& f, std::ostream& os) {
    for (std::uint32_t v : f.values) os << std::hex << v << std::dec << "\n";
}

FunctionTable import_table(std::istream& is, FieldPtr spec) {
    FunctionTable t;
    t.spec = spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() && is.peek() == EOF) break;  // trailing newline
        std::uint32_t v;
        try {
            v = parse_hex(line);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad hex value '" +
                                        line + "'");
        }
        if (v >= spec->field_size())
            throw std::invalid_argument("line " + std::to_string(lineno) + ": value " +
                                        to_hex(v) + " out of field range");
        t.values.push_back(v);
    }
    if (t.values.size() != spec->field_size())
        throw std::invalid_argument("expected " + std::to_string(spec->field_size()) +
                                    " lines, got " + std::to_string(t.values.size()));
    t.provenance = "imported";
    return t;
}

}  // namespace apnspectra
