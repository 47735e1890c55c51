#pragma once

#include <ostream>

#include "ea2hg/ea2.hpp"

namespace ea2hg {

// Cross-checks the structured algorithms against the table oracle for one
// signature: axiom validation, enumeration, counts, isomorphism and
// automorphism agreement, Frattini, and the thinness predicates. Writes one
// line per check to out; returns true iff every check passed.
bool verify_signature(const Signature& sig, std::ostream& out);

// Same checks against a caller-supplied table. Normally the table is
// to_table(sig); passing a corrupted table exercises the failure path.
bool verify_signature(const Signature& sig, const hg::TableHypergroup& table,
                      std::ostream& out);

// verify_signature over all 2^p thick-mask choices of every p <= max_p, in
// ascending (p, mask) order, plus a summary line. Guard: max_p <= 4.
bool run_verification(unsigned max_p, std::ostream& out);

}  // namespace ea2hg
