#include "minrank/field.hpp"

#include <string>

#include "minrank/error.hpp"

namespace minrank {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

FieldSpec::FieldSpec(unsigned q) {
    if (q < 2 || q > 251 || !is_prime(q)) {
        throw Error(Errc::field, "field modulus must be a prime in [2, 251], got " + std::to_string(q));
    }
    q_ = std::uint8_t(q);
    for (unsigned x = 1; x < q; ++x) {
        for (unsigned y = 1; y < q; ++y) {
            if ((x * y) % q == 1) {
                inv_[x] = std::uint8_t(y);
                break;
            }
        }
    }
}

std::uint8_t FieldSpec::inv(std::uint8_t x) const {
    if (x == 0) throw Error(Errc::field, "zero has no inverse");
    return inv_[x];
}

}  // namespace minrank
