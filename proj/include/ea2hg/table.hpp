#pragma once

// Generic table-based finite hypergroups with full axiom verification and
// exhaustive brute-force algorithms. Everything here works from the raw
// hypermultiplication table; it is the independent reference implementation
// against which the structured algorithms are validated.

#include <cstdint>
#include <string>
#include <vector>

#include "ea2hg/bigcount.hpp"
#include "ea2hg/common.hpp"

namespace ea2hg::hg {

using ElementIndex = int;
using IndexSet = std::vector<ElementIndex>;  // sorted, no duplicates

// An explicit finite hypergroup: n elements 0..n-1, an identity, a star
// (involution) map, and an n x n table of product sets. Tables are capped at
// 64 elements so subsets fit one machine word; the brute-force operations
// below carry tighter guards. Immutable after construction.
//
// The constructor enforces structure only (shape, index ranges); the
// hypergroup axioms themselves are checked by validate_axioms.
class TableHypergroup {
public:
    TableHypergroup(int n, ElementIndex identity, std::vector<ElementIndex> star,
                    std::vector<std::vector<IndexSet>> table);

    int size() const { return n_; }
    ElementIndex identity() const { return identity_; }
    ElementIndex star(ElementIndex p) const { return star_[static_cast<std::size_t>(p)]; }
    const IndexSet& product(ElementIndex p, ElementIndex q) const {
        return table_[static_cast<std::size_t>(p) * n_ + q];
    }

    // Product set as a bitmask over element indices.
    Mask product_mask(ElementIndex p, ElementIndex q) const {
        return prod_mask_[static_cast<std::size_t>(p) * n_ + q];
    }

    bool operator==(const TableHypergroup&) const = default;

private:
    int n_ = 0;
    ElementIndex identity_ = 0;
    std::vector<ElementIndex> star_;
    std::vector<IndexSet> table_;    // row-major n x n
    std::vector<Mask> prod_mask_;    // same layout
};

struct AxiomViolation {
    std::string axiom;                  // "H1", "H2", "H3", "star", "nonempty"
    std::vector<ElementIndex> witness;  // offending pair or triple
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;  // first witness per axiom
};

// Checks associativity (H1), the identity law (H2), the triple-membership
// equivalence (H3), star involutivity, and product nonemptiness.
AxiomReport validate_axioms(const TableHypergroup& t);

// Complex product FG = { a : b in F, c in G, a in bc }.
IndexSet product_sets(const TableHypergroup& t, const IndexSet& f, const IndexSet& g);

// G nonempty and G*G subset of G.
bool is_closed_subset(const TableHypergroup& t, const IndexSet& g);

// All closed subsets by exhaustive scan over subsets containing the identity,
// in ascending bitmask order. Guard: n <= 16.
std::vector<IndexSet> brute_closed_subsets(const TableHypergroup& t);

// Least closed subset containing seed (empty seed gives {e}).
IndexSet generated_closed_subset(const TableHypergroup& t, const IndexSet& seed);

// Elements p of g with p*p = {e}.
IndexSet thin_part(const TableHypergroup& t, const IndexSet& g);

// Closed subset generated by the union of all p*p over p in g; g must be closed.
IndexSet strong_core(const TableHypergroup& t, const IndexSet& g);

// p*Fp subset of F for every p in g. Both sets must be closed with f subset of g.
bool is_strongly_normal(const TableHypergroup& t, const IndexSet& f, const IndexSet& g);

// Closed subset generated by all commutator values b*c*bc, b in f, c in g.
IndexSet commutator_closed_subset(const TableHypergroup& t, const IndexSet& f,
                                  const IndexSet& g);

// Chain {e} = F_1 < ... < F_p = g with each F_q strongly normal in F_{q+1};
// exhaustive search with memoization. g must be closed. Guard: n <= 16.
bool is_residually_thin(const TableHypergroup& t, const IndexSet& g);

// The commutator series g, [g,g], [[g,g],g], ... reaches {e}. g must be closed.
bool is_nilpotent(const TableHypergroup& t, const IndexSet& g);

// Intersection of all maximal closed subsets of g; {e} when g = {e}.
// g must be closed. Guard: n <= 16.
IndexSet frattini(const TableHypergroup& t, const IndexSet& g);

// Bijection alpha with e^alpha = e and (pq)^alpha = p^alpha q^alpha (as sets)
// between two closed subsets, by exhaustive backtracking. Guard: |g| <= 8.
bool brute_isomorphism_exists(const TableHypergroup& t1, const IndexSet& g1,
                              const TableHypergroup& t2, const IndexSet& g2);

// Exact number of automorphisms of a closed subset. Guard: |g| <= 8.
BigCount brute_automorphism_count(const TableHypergroup& t, const IndexSet& g);

// Canonical text form (JSON with fields identity, n, star, table); parsing a
// serialized table and reserializing reproduces the bytes exactly.
std::string serialize(const TableHypergroup& t);
TableHypergroup parse_table(const std::string& text);

}  // namespace ea2hg::hg
