#pragma once

// The structured side: signatures, bitmask elements, and the closed-form
// hypermultiplication of an elementary abelian 2-hypergroup.
//
// A signature (p, K) fixes p involution generators q_1..q_p; generator q_{i+1}
// is thick exactly when bit i of K is set. Every element of the hypergroup is
// identified by its support, a p-bit mask, with mask 0 the identity e.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ea2hg/common.hpp"
#include "ea2hg/table.hpp"

namespace ea2hg {

using Element = Mask;                     // support mask; 0 is the identity
using ElementSet = std::vector<Element>;  // ascending, no duplicates

class Signature {
public:
    Signature(unsigned p, Mask thick_mask);

    unsigned p() const { return p_; }
    Mask thick_mask() const { return thick_; }
    unsigned thick_count() const { return popcount(thick_); }  // p#
    unsigned thin_count() const { return p_ - thick_count(); }
    Mask thin_mask() const { return full_mask(p_) & ~thick_; }
    Mask element_space() const { return full_mask(p_); }

    bool operator==(const Signature&) const = default;

private:
    unsigned p_;
    Mask thick_;
};

// The product xy = { u : D subset of u subset of D|M } with D = x^y and
// M = x&y&K: coordinates where exactly one factor is supported are forced on,
// shared thin coordinates cancel, shared thick coordinates are free. Result is
// ascending; its size is 2^popcount(M).
ElementSet multiply(const Signature& sig, Element x, Element y);

// Full 2^p x 2^p table with element index = support mask; star is the
// identity map (every element is symmetric). Guard: p <= 4.
hg::TableHypergroup to_table(const Signature& sig);

// The unique thick/thin decomposition (x&K, x&~K); the parts XOR back to x.
std::pair<Element, Element> plus_minus(const Signature& sig, Element x);

// Number of thick generators in the support.
unsigned s_of(const Signature& sig, Element x);

struct SubsetStats {
    unsigned s = 0;   // max thick support size over the subset
    unsigned r2 = 0;  // 2-rank of the thin parts
    bool operator==(const SubsetStats&) const = default;
};

// (s, r2) of a closed subset; |G| = 2^(s+r2) when g really is closed.
SubsetStats subset_stats(const Signature& sig, const ElementSet& g);

// Compress the bits of x at thin coordinate positions into a dense
// thin_count()-bit mask, and back.
Mask pack_thin(const Signature& sig, Mask x);
Mask unpack_thin(const Signature& sig, Mask packed);

// Text forms. Signatures: "p=2,thick=2" (1-based thick indices, ",thick=..."
// omitted when empty). Elements: "{1,2}" with "{}" for e.
std::string format_signature(const Signature& sig);
Signature parse_signature(std::string_view text);
std::string format_element(Element x);
Element parse_element(std::string_view text, const Signature& sig);

}  // namespace ea2hg
