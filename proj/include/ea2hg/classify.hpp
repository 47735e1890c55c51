#pragma once

// Structure theory of the closed subsets of an elementary abelian
// 2-hypergroup: every closed subset decomposes uniquely into a thick support
// mask A (any subset of the signature's thick generators) and a GF(2) subspace
// F of the thin coordinates. Enumeration, counting, isomorphism, and
// automorphism descriptors all run on that decomposition; the table kernel
// provides the independent cross-check.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ea2hg/bigcount.hpp"
#include "ea2hg/common.hpp"
#include "ea2hg/ea2.hpp"
#include "ea2hg/gf2.hpp"

namespace ea2hg::classify {

// Canonical form of one closed subset: thick support A (subset of the thick
// mask K) plus an echelon-basis subspace of the thin coordinates. The subset
// it names has 2^(popcount(A) + dim F) elements.
class ClosedDescriptor {
public:
    ClosedDescriptor(const Signature& sig, Mask thick_support, gf2::Gf2Subspace thin_subgroup);

    const Signature& sig() const { return sig_; }
    Mask thick_support() const { return thick_support_; }
    const gf2::Gf2Subspace& thin_subgroup() const { return thin_subgroup_; }

    SubsetStats stats() const { return {popcount(thick_support_), thin_subgroup_.dim()}; }
    BigCount size() const { return pow2(popcount(thick_support_) + thin_subgroup_.dim()); }

    bool operator==(const ClosedDescriptor&) const = default;

private:
    friend class ClosedSubsetStream;
    Signature sig_;
    Mask thick_support_;
    gf2::Gf2Subspace thin_subgroup_;
};

struct AutDescriptor {
    unsigned s = 0;
    unsigned r2 = 0;
    BigCount order;  // s! * |GL(r2, 2)|
    bool operator==(const AutDescriptor&) const = default;
};

struct IsoClassStat {
    unsigned s = 0;
    unsigned r2 = 0;
    BigCount cardinality;  // C(p#, s) * binom(p - p#, r2)_2
    bool operator==(const IsoClassStat&) const = default;
};

// All elements with thick part inside A and thin part in F, ascending.
// Guard: popcount(A) + dim F <= 20.
ElementSet materialize(const ClosedDescriptor& d);

// Inverse of materialize. Throws NotClosedError when g is not a closed subset
// (the reconstructed descriptor fails to materialize back to g).
ClosedDescriptor recognize(const Signature& sig, const ElementSet& g);

struct EnumOptions {
    std::optional<unsigned> size_exponent;  // keep only subsets of 2^r elements
    bool strongly_normal = false;           // keep only A = K
};

// Streams every closed subset of the signature exactly once: thick support A
// ascending over submasks of K, then subspace enumeration order. The pointer
// returned by next() stays valid until the following call.
// Guard: thin count <= 14.
class ClosedSubsetStream {
public:
    explicit ClosedSubsetStream(const Signature& sig, EnumOptions opts = {});

    const ClosedDescriptor* next();

private:
    bool start_thick(Mask a);  // false when the size filter rules this A out
    Signature sig_;
    EnumOptions opts_;
    Mask a_ = 0;
    bool fresh_ = true;
    bool done_ = false;
    std::optional<gf2::SubspaceStream> subspaces_;
    std::optional<ClosedDescriptor> current_;
};

std::vector<ClosedDescriptor> enumerate_closed(const Signature& sig, EnumOptions opts = {});

// Whole-hypergroup counts, exact.
BigCount count_closed(const Signature& sig);
BigCount count_strongly_normal(const Signature& sig);

// Number of closed subsets of 2^r elements inside an ambient closed subset
// with the given (s, r2); 0 when r > s + r2.
BigCount count_closed_of_size(const SubsetStats& ambient, unsigned r);

// Number of strongly normal closed subsets of 2^r elements of that ambient:
// 0 below 2^s, binom(r2, r - s)_2 from there on.
BigCount count_strongly_normal_of_size(const SubsetStats& ambient, unsigned r);

// Closed subsets are isomorphic exactly when their (s, r2) pairs agree.
bool is_isomorphic(const ClosedDescriptor& a, const ClosedDescriptor& b);

// One row per isomorphism class (s ascending, then r2); cardinalities sum to
// count_closed(sig).
std::vector<IsoClassStat> iso_class_stats(const Signature& sig);

// Number of isomorphism classes among the closed subsets of an ambient with
// the given stats: (s+1)(r2+1).
BigCount num_iso_classes_within(const SubsetStats& ambient);

AutDescriptor aut_descriptor(const ClosedDescriptor& d);

// Whether two automorphism groups S_s x GL(r2,2) are abstractly isomorphic:
// equal (s, r2), or both trivial, or both isomorphic to S_3.
bool aut_groups_isomorphic(const AutDescriptor& a, const AutDescriptor& b);

// Size of a smallest generating set: 1 for a nontrivial purely thick subset,
// dim F otherwise.
unsigned dimension(const ClosedDescriptor& d);

// A minimal generating set of size dimension(d): the whole thick support
// rides on the first thin basis element.
std::vector<Element> find_basis(const ClosedDescriptor& d);

// Both predicates reduce to "no thick part" and coincide.
bool is_residually_thin_fast(const ClosedDescriptor& d);
bool is_nilpotent_fast(const ClosedDescriptor& d);

// The Frattini closed subset is {e} throughout this family.
ClosedDescriptor frattini_fast(const ClosedDescriptor& d);

// Text form "A={i,...};F=[0b...,...]": 1-based thick indices, thin-coordinate
// basis masks in binary. parse accepts any spanning masks and canonicalizes.
std::string format_descriptor(const ClosedDescriptor& d);
ClosedDescriptor parse_descriptor(const Signature& sig, std::string_view text);

}  // namespace ea2hg::classify
