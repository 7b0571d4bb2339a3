#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace apnspectra {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ReduciblePolynomial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidSubfield : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroComponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotQuadratic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidShape : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GcdViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

inline std::string join_lines(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& it : items) {
        if (!out.empty()) out += "; ";
        out += it;
    }
    return out;
}

struct InvalidParams : std::invalid_argument {
    std::vector<std::string> violations;
    explicit InvalidParams(std::vector<std::string> v)
        : std::invalid_argument("invalid family parameters: " + join_lines(v)),
          violations(std::move(v)) {}
};

// A falsified proof-trace claim. Not a recoverable state: either the
// implementation or the claimed identity is wrong.
struct CheckFailure : std::runtime_error {
    std::vector<std::string> failed;
    explicit CheckFailure(std::vector<std::string> f)
        : std::runtime_error("proof-trace check failed: " + join_lines(f)),
          failed(std::move(f)) {}
};

}  // namespace apnspectra
