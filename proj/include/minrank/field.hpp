#pragma once

#include <array>
#include <cstdint>

namespace minrank {

/// Prime field GF(q), 2 <= q <= 251. Elements are canonical residues 0..q-1.
/// Construction rejects composite moduli. Inverses come from a precomputed
/// table since elimination is the hot path.
class FieldSpec {
public:
    explicit FieldSpec(unsigned q);

    std::uint8_t q() const noexcept { return q_; }

    std::uint8_t add(std::uint8_t x, std::uint8_t y) const {
        unsigned t = unsigned(x) + unsigned(y);
        return std::uint8_t(t >= q_ ? t - q_ : t);
    }

    std::uint8_t sub(std::uint8_t x, std::uint8_t y) const {
        return std::uint8_t(x >= y ? x - y : x + q_ - y);
    }

    std::uint8_t neg(std::uint8_t x) const { return std::uint8_t(x == 0 ? 0 : q_ - x); }

    std::uint8_t mul(std::uint8_t x, std::uint8_t y) const {
        return std::uint8_t((unsigned(x) * unsigned(y)) % q_);
    }

    /// Multiplicative inverse; throws Error(field) for zero.
    std::uint8_t inv(std::uint8_t x) const;

    bool in_field(unsigned v) const noexcept { return v < q_; }

    bool operator==(const FieldSpec& other) const noexcept { return q_ == other.q_; }
    bool operator!=(const FieldSpec& other) const noexcept { return q_ != other.q_; }

private:
    std::uint8_t q_ = 2;
    std::array<std::uint8_t, 256> inv_{};
};

}  // namespace minrank
