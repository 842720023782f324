#pragma once

#include <stdexcept>
#include <string>

namespace minrank {

// Error categories. The CLI maps these onto process exit codes, so library
// code should pick the category by what went wrong, not by who is calling.
enum class Errc {
    format,     // malformed input text
    field,      // value outside the field alphabet, or a bad modulus
    semantic,   // well-formed input that violates problem rules
    bounds,     // index out of range
    domain,     // operation applied outside its defined domain
    dimension,  // incompatible shapes
    validity,   // data fails a consistency check (e.g. mask disagreement)
    budget,     // enumeration budget refused
    exhausted,  // pruned search ran out of branches
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace minrank
