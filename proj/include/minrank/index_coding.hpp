#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minrank/masked.hpp"

namespace minrank {

/// One (normalized) receiver: wants exactly one message, holds `has` as side
/// information. Indices are 0-based internally; orig_id is the 1-based
/// receiver number from the problem file, kept for reporting (a receiver
/// declared with several wanted messages is split into one entry per want,
/// all sharing the orig_id).
struct Receiver {
    std::size_t wants = 0;
    std::vector<std::size_t> has;
    std::size_t orig_id = 0;
};

struct IndexCodingProblem {
    std::size_t message_count = 0;
    std::vector<Receiver> receivers;
    FieldSpec field{2};
    std::size_t block_length = 1;
};

/// Problem file grammar (line oriented, '#' starts a comment line):
///   field <q>
///   block <n>
///   messages <count>
///   receiver <j> wants <i> [<i2> ...] has [<i'> ...]
/// field/block are optional (defaults 2 and 1); messages must precede the
/// receiver lines; receiver numbers must be exactly 1..R, each declared once.
IndexCodingProblem parse_problem(std::string_view text);

/// Demand-pattern matrix of the problem: rows are messages, columns are
/// receivers; 1 = wanted, erased = side information, 0 = interference.
/// For block_length n > 1 the pattern is blown up into n x n blocks.
MaskedMatrix build_matrix(const IndexCodingProblem& p);

/// How one receiver symbol is recovered: a combination of the received
/// transmissions plus a correction over its side-information symbols.
struct Decoder {
    std::vector<std::uint8_t> on_transmissions;              // length l
    std::vector<std::pair<std::size_t, std::uint8_t>> side_terms;  // (blown row, coeff)
};

struct IndexCode {
    std::size_t length = 0;                                // l
    std::vector<std::vector<std::uint8_t>> transmissions;  // l vectors, length messages*n
    std::vector<Decoder> decoders;                         // one per blown receiver column
    std::vector<std::size_t> chosen_columns;               // matrix columns used (0-based)
};

/// Read a transmission scheme off a completed matrix: the pivot columns of
/// its RREF are the independent columns, and the RREF entries give every
/// receiver column's expansion over them.
IndexCode extract_code(const GFMatrix& completed, const IndexCodingProblem& p);

struct VerifyReport {
    bool valid = false;
    bool algebraic_ok = false;
    std::size_t trials = 0;
    std::uint64_t trial_failures = 0;
    std::vector<std::string> failures;  // human-readable, one per failing receiver
};

/// Exact decodability check (every decoder reproduces the wanted unit
/// vector) plus a seeded random-message simulation.
VerifyReport verify_code(const IndexCode& code, const IndexCodingProblem& p, std::size_t trials,
                         std::uint64_t seed);

struct DerivedCode {
    IndexCode code;      // decoders filled in for decodable receivers
    VerifyReport report;
};

/// Verification entry point for externally supplied transmissions: derives a
/// decoder per receiver by solving for the wanted unit vector in the span of
/// the transmissions and the receiver's side-information vectors.
DerivedCode verify_transmissions(const IndexCodingProblem& p,
                                 const std::vector<std::vector<std::uint8_t>>& transmissions,
                                 std::size_t trials, std::uint64_t seed);

/// Block-diagonal lift: each entry v becomes v * I_n. Lifting a completion
/// of the n=1 pattern gives a valid completion of the blown-up pattern with
/// exactly n times the rank.
GFMatrix block_diagonal_lift(const GFMatrix& m, std::size_t n);

}  // namespace minrank
