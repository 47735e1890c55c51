#include "ea2hg/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace ea2hg::gf2 {

namespace {

unsigned pivot_of(Mask v) { return static_cast<unsigned>(std::bit_width(v)) - 1; }

void check_width(unsigned width) {
    if (width > kMaxWidth)
        throw std::invalid_argument("ambient width exceeds " + std::to_string(kMaxWidth));
}

// Next mask with the same popcount (Gosper). Undefined for 0.
Mask next_same_popcount(Mask x) {
    Mask u = x & (~x + 1);
    Mask v = x + u;
    return v + (((v ^ x) / u) >> 2);
}

}  // namespace

Gf2Subspace::Gf2Subspace(unsigned ambient_width) : width_(ambient_width) {
    check_width(width_);
}

Gf2Subspace::Gf2Subspace(unsigned ambient_width, std::vector<Mask> echelon_rows)
    : width_(ambient_width), rows_(std::move(echelon_rows)) {
    check_width(width_);
    Mask pivots = 0;
    unsigned prev = kMaxWidth + 1;
    for (Mask r : rows_) {
        if (r == 0 || r >= (Mask{1} << width_))
            throw std::invalid_argument("basis row out of ambient range");
        unsigned p = pivot_of(r);
        if (p >= prev) throw std::invalid_argument("pivots not strictly decreasing");
        prev = p;
        pivots |= Mask{1} << p;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Mask own_pivot = Mask{1} << pivot_of(rows_[i]);
        if ((rows_[i] & pivots) != own_pivot)
            throw std::invalid_argument("pivot column not cleared in other rows");
    }
}

bool Gf2Subspace::contains(Mask v) const {
    if (v >= (Mask{1} << width_))
        throw std::invalid_argument("vector outside ambient space");
    for (Mask r : rows_) {
        if (v >> pivot_of(r) & 1) v ^= r;
    }
    return v == 0;
}

Gf2Subspace span(unsigned ambient_width, const std::vector<Mask>& vectors) {
    check_width(ambient_width);
    std::vector<Mask> slot(ambient_width, 0);  // slot[b]: row with pivot b, or 0
    for (Mask v : vectors) {
        if (v >= (Mask{1} << ambient_width))
            throw std::invalid_argument("vector outside ambient space");
        while (v != 0) {
            unsigned b = pivot_of(v);
            if (slot[b] == 0) {
                slot[b] = v;
                break;
            }
            v ^= slot[b];
        }
    }
    // Back-substitute so each pivot appears in exactly one row.
    for (unsigned b = 0; b < ambient_width; ++b) {
        if (slot[b] == 0) continue;
        for (unsigned c = b + 1; c < ambient_width; ++c) {
            if (slot[c] != 0 && (slot[c] >> b & 1)) slot[c] ^= slot[b];
        }
    }
    std::vector<Mask> rows;
    for (unsigned b = ambient_width; b-- > 0;) {
        if (slot[b] != 0) rows.push_back(slot[b]);
    }
    return Gf2Subspace(ambient_width, std::move(rows));
}

std::vector<Mask> subspace_members(const Gf2Subspace& s) {
    if (s.dim() > 20) throw GuardError("subspace_members: dim exceeds 20");
    const auto& rows = s.basis();
    const unsigned k = s.dim();
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << k);
    out.push_back(0);
    // Member at index j ^ (1<<t) differs from member at index j by row t;
    // standard doubling fills indices in order.
    for (unsigned t = 0; t < k; ++t) {
        Mask row = rows[k - 1 - t];  // t-th smallest pivot
        std::size_t half = out.size();
        for (std::size_t j = 0; j < half; ++j) out.push_back(out[j] ^ row);
    }
    return out;
}

BigCount gaussian_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigCount r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= pow2(n - i) - 1;
        r /= pow2(i + 1) - 1;  // exact: partial products are Gaussian binomials
    }
    return r;
}

BigCount gl2_order(unsigned r) {
    BigCount out = 1;
    for (unsigned i = 0; i < r; ++i) out *= pow2(r) - pow2(i);
    return out;
}

SubspaceStream::SubspaceStream(unsigned n, std::optional<unsigned> k) : n_(n) {
    if (n > 14) throw GuardError("subspace enumeration: n exceeds 14");
    if (k) {
        if (*k > n) throw std::invalid_argument("k exceeds ambient dimension");
        dim_ = dim_hi_ = *k;
    } else {
        dim_ = 0;
        dim_hi_ = n;
    }
    current_.width_ = n;
}

void SubspaceStream::load_pivots(Mask pivot_mask) {
    pivot_mask_ = pivot_mask;
    auto& rows = current_.rows_;
    rows.clear();
    slots_.clear();
    for (unsigned b = n_; b-- > 0;) {
        if (pivot_mask >> b & 1) rows.push_back(Mask{1} << b);
    }
    for (unsigned i = 0; i < rows.size(); ++i) {
        unsigned p = pivot_of(rows[i]);
        for (unsigned b = 0; b < p; ++b) {
            if (!(pivot_mask >> b & 1)) slots_.emplace_back(i, b);
        }
    }
    free_count_ = std::uint64_t{1} << slots_.size();
    free_index_ = 0;
}

bool SubspaceStream::advance_pivots() {
    if (pivot_mask_ != 0) {
        Mask nxt = next_same_popcount(pivot_mask_);
        if (nxt < (Mask{1} << n_)) {
            load_pivots(nxt);
            return true;
        }
    }
    // Dimension exhausted; move to the next one unless k was fixed.
    if (dim_ >= dim_hi_) return false;
    ++dim_;
    load_pivots((Mask{1} << dim_) - 1);
    return true;
}

const Gf2Subspace* SubspaceStream::next() {
    if (done_) return nullptr;
    if (fresh_) {
        fresh_ = false;
        load_pivots(dim_ == 0 ? 0 : (Mask{1} << dim_) - 1);
        return &current_;
    }
    if (free_index_ + 1 < free_count_) {
        std::uint64_t flips = free_index_ ^ (free_index_ + 1);
        ++free_index_;
        while (flips != 0) {
            unsigned t = static_cast<unsigned>(std::countr_zero(flips));
            flips &= flips - 1;
            auto [row, bit] = slots_[t];
            current_.rows_[row] ^= Mask{1} << bit;
        }
        return &current_;
    }
    if (!advance_pivots()) {
        done_ = true;
        return nullptr;
    }
    return &current_;
}

std::vector<Gf2Subspace> enumerate_subspaces(unsigned n, std::optional<unsigned> k) {
    SubspaceStream stream(n, k);
    std::vector<Gf2Subspace> out;
    while (const Gf2Subspace* s = stream.next()) out.push_back(*s);
    return out;
}

}  // namespace ea2hg::gf2
