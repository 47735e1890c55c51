#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ea2hg/ea2.hpp"
#include "ea2hg/table.hpp"

using namespace ea2hg;
using hg::IndexSet;
using hg::TableHypergroup;

namespace {

// The four-element hypergroup with one thin and one thick involution,
// hand-coded entry by entry. Indices: e=0, q1=1, q2=2, r=3.
TableHypergroup example_table() {
    std::vector<std::vector<IndexSet>> table = {
        {{0}, {1}, {2}, {3}},
        {{1}, {0}, {3}, {2}},
        {{2}, {3}, {0, 2}, {1, 3}},
        {{3}, {2}, {1, 3}, {0, 2}},
    };
    return TableHypergroup(4, 0, {0, 1, 2, 3}, std::move(table));
}

// Elementary abelian 2-group of rank k as a thin hypergroup table.
TableHypergroup xor_table(unsigned k) {
    const int n = 1 << k;
    std::vector<hg::ElementIndex> star(static_cast<std::size_t>(n));
    std::vector<std::vector<IndexSet>> table(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        star[static_cast<std::size_t>(a)] = a;
        table[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = {a ^ b};
    }
    return TableHypergroup(n, 0, std::move(star), std::move(table));
}

// Two-element hypergroup whose non-identity element is thick: q*q = {e, q}.
TableHypergroup thick_pair_table() {
    return TableHypergroup(2, 0, {0, 1}, {{{0}, {1}}, {{1}, {0, 1}}});
}

IndexSet whole(const TableHypergroup& t) {
    IndexSet out(static_cast<std::size_t>(t.size()));
    for (int i = 0; i < t.size(); ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

}  // namespace

TEST_CASE("validate_axioms: the example table passes") {
    auto report = hg::validate_axioms(example_table());
    CHECK(report.passed);
    CHECK(report.violations.empty());
}

TEST_CASE("validate_axioms: corrupting q2*q2 to {e} is flagged") {
    std::vector<std::vector<IndexSet>> table = {
        {{0}, {1}, {2}, {3}},
        {{1}, {0}, {3}, {2}},
        {{2}, {3}, {0}, {1, 3}},  // q2*q2 changed from {e,q2} to {e}
        {{3}, {2}, {1, 3}, {0, 2}},
    };
    auto report = hg::validate_axioms(TableHypergroup(4, 0, {0, 1, 2, 3}, std::move(table)));
    CHECK(!report.passed);
    bool h1_or_h3 = false;
    for (const auto& v : report.violations) {
        if (v.axiom == "H1" || v.axiom == "H3") h1_or_h3 = true;
    }
    CHECK(h1_or_h3);
}

TEST_CASE("validate_axioms: every ea2 table with p <= 4 passes") {
    for (unsigned p = 0; p <= 4; ++p) {
        for (Mask k = 0; k <= full_mask(p); ++k) {
            CHECK(hg::validate_axioms(to_table(Signature(p, k))).passed);
        }
    }
}

TEST_CASE("product_sets") {
    auto t = example_table();
    CHECK(hg::product_sets(t, {0}, {0, 1, 2, 3}) == IndexSet{0, 1, 2, 3});
    CHECK(hg::product_sets(t, {2}, {3}) == IndexSet{1, 3});
    CHECK(hg::product_sets(t, {2, 3}, {2, 3}) == IndexSet{0, 1, 2, 3});
}

TEST_CASE("is_closed_subset") {
    auto t = example_table();
    CHECK(hg::is_closed_subset(t, {0}));
    CHECK(hg::is_closed_subset(t, {0, 2}));
    CHECK(!hg::is_closed_subset(t, {0, 3}));  // r*r = {e,q2} leaves the set
    CHECK_THROWS_AS(hg::is_closed_subset(t, {}), std::invalid_argument);
}

TEST_CASE("brute_closed_subsets") {
    auto t = example_table();
    std::vector<IndexSet> expect = {{0}, {0, 1}, {0, 2}, {0, 1, 2, 3}};
    CHECK(hg::brute_closed_subsets(t) == expect);

    TableHypergroup trivial(1, 0, {0}, {{{0}}});
    CHECK(hg::brute_closed_subsets(trivial) == std::vector<IndexSet>{{0}});

    CHECK(hg::brute_closed_subsets(xor_table(3)).size() == 16);  // 1+7+7+1
}

TEST_CASE("generated_closed_subset") {
    auto t = example_table();
    CHECK(hg::generated_closed_subset(t, {}) == IndexSet{0});
    CHECK(hg::generated_closed_subset(t, {2}) == IndexSet{0, 2});
    CHECK(hg::generated_closed_subset(t, {3}) == IndexSet{0, 1, 2, 3});
}

TEST_CASE("generated_closed_subset is the least closed superset (all seeds, p <= 3)") {
    for (unsigned p = 0; p <= 3; ++p) {
        for (Mask k = 0; k <= full_mask(p); ++k) {
            auto t = to_table(Signature(p, k));
            auto closed = hg::brute_closed_subsets(t);
            for (Mask seed = 0; seed <= full_mask(static_cast<unsigned>(t.size())); ++seed) {
                IndexSet s;
                for (int i = 0; i < t.size(); ++i) {
                    if (seed >> i & 1) s.push_back(i);
                }
                IndexSet gen = hg::generated_closed_subset(t, s);
                // least closed subset containing s
                const IndexSet* least = nullptr;
                for (const auto& g : closed) {
                    if (std::includes(g.begin(), g.end(), s.begin(), s.end())) {
                        if (least == nullptr || g.size() < least->size()) least = &g;
                    }
                }
                REQUIRE(least != nullptr);
                CHECK(gen == *least);
            }
        }
    }
}

TEST_CASE("thin_part") {
    auto t = example_table();
    CHECK(hg::thin_part(t, whole(t)) == IndexSet{0, 1});
    CHECK(hg::thin_part(t, {0}) == IndexSet{0});
    auto both_thick = to_table(Signature(2, 0b11));
    CHECK(hg::thin_part(both_thick, whole(both_thick)) == IndexSet{0});
}

TEST_CASE("strong_core") {
    auto t = example_table();
    CHECK(hg::strong_core(t, whole(t)) == IndexSet{0, 2});
    CHECK(hg::strong_core(t, {0, 1}) == IndexSet{0});
    auto t2 = to_table(Signature(3, 0b011));  // thick = {1,2}
    CHECK(hg::strong_core(t2, whole(t2)) == IndexSet{0, 1, 2, 3});
    CHECK_THROWS_AS(hg::strong_core(t, {0, 3}), std::invalid_argument);
}

TEST_CASE("is_strongly_normal") {
    auto t = example_table();
    for (const auto& g : hg::brute_closed_subsets(t)) CHECK(hg::is_strongly_normal(t, g, g));
    CHECK(hg::is_strongly_normal(t, {0, 2}, whole(t)));
    CHECK(!hg::is_strongly_normal(t, {0, 1}, whole(t)));

    auto thin = xor_table(3);
    auto closed = hg::brute_closed_subsets(thin);
    for (const auto& f : closed) {
        for (const auto& g : closed) {
            if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) continue;
            CHECK(hg::is_strongly_normal(thin, f, g));
        }
    }
    CHECK_THROWS_AS(hg::is_strongly_normal(t, {0, 3}, whole(t)), std::invalid_argument);
}

TEST_CASE("commutator_closed_subset") {
    auto t = example_table();
    // With b = e the commutator values e*c*ec are the sets c*c, so even
    // [{e}, G] already generates the strong core of G.
    CHECK(hg::commutator_closed_subset(t, {0}, whole(t)) == IndexSet{0, 2});
    CHECK(hg::commutator_closed_subset(t, {0}, {0, 1}) == IndexSet{0});
    CHECK(hg::commutator_closed_subset(t, whole(t), whole(t)) == IndexSet{0, 2});
    auto klein = xor_table(2);
    CHECK(hg::commutator_closed_subset(klein, {0}, whole(klein)) == IndexSet{0});
    CHECK(hg::commutator_closed_subset(klein, whole(klein), whole(klein)) == IndexSet{0});
}

TEST_CASE("is_residually_thin / is_nilpotent on the example table") {
    auto t = example_table();
    CHECK(hg::is_residually_thin(t, {0}));
    CHECK(hg::is_residually_thin(t, {0, 1}));
    CHECK(!hg::is_residually_thin(t, {0, 2}));
    CHECK(!hg::is_residually_thin(t, whole(t)));

    CHECK(hg::is_nilpotent(t, {0}));
    CHECK(!hg::is_nilpotent(t, {0, 2}));
    CHECK(hg::is_nilpotent(t, {0, 1}));
}

TEST_CASE("the two-element thick hypergroup is neither residually thin nor nilpotent") {
    auto t = thick_pair_table();
    CHECK(hg::validate_axioms(t).passed);
    CHECK(!hg::is_residually_thin(t, whole(t)));
    CHECK(!hg::is_nilpotent(t, whole(t)));
}

TEST_CASE("frattini") {
    auto t = example_table();
    CHECK(hg::frattini(t, whole(t)) == IndexSet{0});
    CHECK(hg::frattini(t, {0}) == IndexSet{0});
    auto thin = xor_table(3);
    CHECK(hg::frattini(thin, whole(thin)) == IndexSet{0});
}

TEST_CASE("brute_isomorphism_exists") {
    auto t = example_table();
    CHECK(hg::brute_isomorphism_exists(t, whole(t), t, whole(t)));
    CHECK(!hg::brute_isomorphism_exists(t, {0, 1}, t, {0, 2}));

    auto t3 = to_table(Signature(3, 0b001));  // thick = {1}; q2, q3 thin
    CHECK(hg::brute_isomorphism_exists(t3, {0, 2}, t3, {0, 4}));
}

TEST_CASE("brute_automorphism_count") {
    auto t = example_table();
    CHECK(hg::brute_automorphism_count(t, {0}) == 1);
    CHECK(hg::brute_automorphism_count(t, whole(t)) == 1);
    auto t3 = to_table(Signature(3, 0b001));
    CHECK(hg::brute_automorphism_count(t3, whole(t3)) == 6);
}

TEST_CASE("kernel invariants over all ea2 tables with p <= 3") {
    for (unsigned p = 0; p <= 3; ++p) {
        for (Mask k = 0; k <= full_mask(p); ++k) {
            auto t = to_table(Signature(p, k));
            // e in p*p for every p
            for (int x = 0; x < t.size(); ++x) {
                bool has_e = (t.product_mask(t.star(x), x) >> t.identity()) & 1;
                CHECK(has_e);
            }
            auto closed = hg::brute_closed_subsets(t);
            std::set<IndexSet> closed_set(closed.begin(), closed.end());
            // closed under pairwise intersection
            for (const auto& a : closed) {
                for (const auto& b : closed) {
                    IndexSet inter;
                    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                          std::back_inserter(inter));
                    CHECK(closed_set.count(inter) == 1);
                }
            }
            // commutator(G,G) equals the strong core; both thinness notions agree
            for (const auto& g : closed) {
                CHECK(hg::commutator_closed_subset(t, g, g) == hg::strong_core(t, g));
                CHECK(hg::is_residually_thin(t, g) == hg::is_nilpotent(t, g));
            }
        }
    }
}

TEST_CASE("strong_core is the least strongly normal closed subset (p <= 4)") {
    for (unsigned p = 0; p <= 4; ++p) {
        for (Mask k = 0; k <= full_mask(p); ++k) {
            auto t = to_table(Signature(p, k));
            auto closed = hg::brute_closed_subsets(t);
            for (const auto& g : closed) {
                IndexSet core = hg::strong_core(t, g);
                CHECK(hg::is_strongly_normal(t, core, g));
                for (const auto& f : closed) {
                    if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) continue;
                    bool sn = hg::is_strongly_normal(t, f, g);
                    bool contains_core =
                        std::includes(f.begin(), f.end(), core.begin(), core.end());
                    CHECK(sn == contains_core);
                }
            }
        }
    }
}

TEST_CASE("serialization round-trips bit-exactly") {
    auto t = example_table();
    std::string text = hg::serialize(t);
    TableHypergroup back = hg::parse_table(text);
    CHECK(back == t);
    CHECK(hg::serialize(back) == text);

    CHECK_THROWS_AS(hg::parse_table("{"), std::invalid_argument);
    CHECK_THROWS_AS(hg::parse_table(R"({"n":2,"identity":0,"star":[0,1],"table":[[[0],[1]]]})"),
                    std::invalid_argument);  // ragged
    CHECK_THROWS_AS(
        hg::parse_table(
            R"({"n":1,"identity":0,"star":[0],"table":[[[7]]]})"),
        std::invalid_argument);  // out of range
}

TEST_CASE("guards are hard errors") {
    // structurally fine 17-element table; brute scans must refuse it
    const int n = 17;
    std::vector<hg::ElementIndex> star(static_cast<std::size_t>(n));
    std::vector<std::vector<IndexSet>> table(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        star[static_cast<std::size_t>(a)] = a;
        table[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(n), {0});
    }
    TableHypergroup big(n, 0, std::move(star), std::move(table));
    CHECK_THROWS_AS(hg::brute_closed_subsets(big), GuardError);
    CHECK_THROWS_AS(hg::is_residually_thin(big, {0}), GuardError);
    CHECK_THROWS_AS(hg::frattini(big, {0}), GuardError);

    auto t16 = xor_table(4);
    CHECK_THROWS_AS(hg::brute_automorphism_count(t16, whole(t16)), GuardError);
    CHECK_THROWS_AS(hg::brute_isomorphism_exists(t16, whole(t16), t16, whole(t16)),
                    GuardError);
}
