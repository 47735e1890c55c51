#pragma once

// Exact GF(2) linear algebra on single-word bitmask vectors: reduced-echelon
// subspace canonical forms, exhaustive subspace enumeration, Gaussian binomial
// coefficients, and GL(r,2) orders.

#include <cstdint>
#include <optional>
#include <vector>

#include "ea2hg/bigcount.hpp"
#include "ea2hg/common.hpp"

namespace ea2hg::gf2 {

class SubspaceStream;

// A subspace of GF(2)^n in reduced row echelon form: basis rows with strictly
// decreasing pivot (highest set bit) positions, each pivot clear in every
// other row. The form is unique per subspace, so equality is row-wise.
class Gf2Subspace {
public:
    Gf2Subspace() = default;  // zero subspace of width 0
    explicit Gf2Subspace(unsigned ambient_width);

    // Basis rows must already be in reduced echelon form; throws
    // std::invalid_argument otherwise.
    Gf2Subspace(unsigned ambient_width, std::vector<Mask> echelon_rows);

    unsigned ambient_width() const { return width_; }
    unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
    const std::vector<Mask>& basis() const { return rows_; }

    bool contains(Mask v) const;

    bool operator==(const Gf2Subspace&) const = default;

private:
    friend class SubspaceStream;
    unsigned width_ = 0;
    std::vector<Mask> rows_;  // descending pivot order
};

// Reduced-echelon span of the given vectors. Idempotent and order-independent;
// throws std::invalid_argument if a vector does not fit the ambient width.
Gf2Subspace span(unsigned ambient_width, const std::vector<Mask>& vectors);

// All 2^dim members, ordered by combination index: bit t of the index selects
// the basis row with the t-th smallest pivot. Index 0 is the zero vector.
// Guard: dim <= 20.
std::vector<Mask> subspace_members(const Gf2Subspace& s);

// Number of k-dimensional subspaces of GF(2)^n, exactly; 0 when k > n.
BigCount gaussian_binomial(unsigned n, unsigned k);

// |GL(r,2)| = prod_{i<r} (2^r - 2^i); 1 for r = 0.
BigCount gl2_order(unsigned r);

// Yields every subspace of GF(2)^n (or every k-dimensional one when k is
// given) exactly once. Order: dimension ascending, then pivot-column mask
// ascending, then free-entry assignment ascending. The pointer returned by
// next() stays valid until the following call; copy the subspace to keep it.
// Guard: n <= 14.
class SubspaceStream {
public:
    explicit SubspaceStream(unsigned n, std::optional<unsigned> k = std::nullopt);

    // nullptr when exhausted.
    const Gf2Subspace* next();

private:
    void load_pivots(Mask pivot_mask);
    bool advance_pivots();

    unsigned n_ = 0;
    unsigned dim_ = 0;
    unsigned dim_hi_ = 0;
    Mask pivot_mask_ = 0;
    std::vector<std::pair<unsigned, unsigned>> slots_;  // (row, free bit)
    std::uint64_t free_count_ = 0;
    std::uint64_t free_index_ = 0;
    bool fresh_ = true;
    bool done_ = false;
    Gf2Subspace current_;
};

// Convenience: materializes the stream. Same guards and order.
std::vector<Gf2Subspace> enumerate_subspaces(unsigned n,
                                             std::optional<unsigned> k = std::nullopt);

}  // namespace ea2hg::gf2
