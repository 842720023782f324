#include "minrank/code.hpp"

#include "minrank/error.hpp"

namespace minrank {

LinearCode build_code(const GFMatrix& complete_sub) {
    const FieldSpec& f = complete_sub.field();
    std::size_t m = complete_sub.cols();

    RrefResult r = rref(complete_sub);
    std::size_t k = r.pivot_cols.size();

    GFMatrix generator(f, k, m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) generator.set(i, j, r.matrix(i, j));

    auto basis = nullspace_basis(generator);
    GFMatrix parity = GFMatrix::from_row_vectors(f, basis, m);

    return LinearCode{std::move(generator), std::move(parity), std::move(r.pivot_cols)};
}

std::vector<std::uint8_t> ProjectionOutcome::completion(std::uint64_t index) const {
    std::vector<std::uint8_t> fill = solutions_.solution(index);
    std::vector<std::uint8_t> out(partial_.size());
    for (std::size_t j = 0; j < partial_.size(); ++j)
        out[j] = partial_[j] < 0 ? 0 : std::uint8_t(partial_[j]);
    for (std::size_t e = 0; e < erased_positions_.size(); ++e)
        out[erased_positions_[e]] = fill[e];
    return out;
}

ProjectionOutcome project_vector(const LinearCode& code, std::span<const std::int16_t> partial) {
    const FieldSpec& f = code.generator.field();
    std::size_t m = code.length();
    if (partial.size() != m) throw Error(Errc::dimension, "partial vector length mismatch");

    std::vector<std::size_t> erased;
    for (std::size_t j = 0; j < m; ++j)
        if (partial[j] < 0) erased.push_back(j);

    // Each parity row h gives sum_{j erased} h[j] u_j = -sum_{j known} h[j] x_j.
    std::size_t rows = code.parity.rows();
    GFMatrix a(f, rows, erased.size());
    std::vector<std::uint8_t> b(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint8_t rhs = 0;
        for (std::size_t j = 0; j < m; ++j) {
            std::uint8_t h = code.parity(i, j);
            if (h == 0 || partial[j] < 0) continue;
            rhs = f.add(rhs, f.mul(h, std::uint8_t(partial[j])));
        }
        b[i] = f.neg(rhs);
        for (std::size_t e = 0; e < erased.size(); ++e) a.set(i, e, code.parity(i, erased[e]));
    }

    AffineSolutionSet sol = solve_linear(a, b);
    return ProjectionOutcome(PartialVec(partial.begin(), partial.end()), std::move(erased),
                             std::move(sol));
}

}  // namespace minrank
