#include "ea2hg/verify.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ea2hg/classify.hpp"
#include "ea2hg/table.hpp"

namespace ea2hg {

namespace {

ElementSet to_elements(const hg::IndexSet& s) {
    ElementSet out;
    out.reserve(s.size());
    for (hg::ElementIndex i : s) out.push_back(static_cast<Element>(i));
    return out;
}

hg::IndexSet to_indices(const ElementSet& s) {
    hg::IndexSet out;
    out.reserve(s.size());
    for (Element x : s) out.push_back(static_cast<hg::ElementIndex>(x));
    return out;
}

struct Checker {
    const Signature& sig;
    std::ostream& out;
    bool all_ok = true;

    void line(const std::string& check, bool ok, const std::string& detail = "") {
        out << format_signature(sig) << ' ' << check << ' ' << (ok ? "ok" : "FAIL");
        if (!detail.empty()) out << " (" << detail << ')';
        out << '\n';
        all_ok = all_ok && ok;
    }
};

}  // namespace

bool verify_signature(const Signature& sig, std::ostream& out) {
    return verify_signature(sig, to_table(sig), out);
}

bool verify_signature(const Signature& sig, const hg::TableHypergroup& table,
                      std::ostream& out) {
    Checker ck{sig, out};

    ck.line("axioms", hg::validate_axioms(table).passed);

    // Oracle-side lists.
    std::vector<hg::IndexSet> oracle = hg::brute_closed_subsets(table);
    hg::IndexSet whole(static_cast<std::size_t>(table.size()));
    for (int i = 0; i < table.size(); ++i) whole[static_cast<std::size_t>(i)] = i;
    std::vector<hg::IndexSet> oracle_sn;
    for (const hg::IndexSet& g : oracle) {
        if (hg::is_strongly_normal(table, g, whole)) oracle_sn.push_back(g);
    }

    auto sorted = [](std::vector<hg::IndexSet> sets) {
        std::sort(sets.begin(), sets.end());
        return sets;
    };

    // Structured enumeration, materialized.
    std::vector<classify::ClosedDescriptor> descs = classify::enumerate_closed(sig);
    std::vector<hg::IndexSet> enumerated;
    for (const auto& d : descs) enumerated.push_back(to_indices(classify::materialize(d)));
    ck.line("enumeration", sorted(enumerated) == sorted(oracle),
            std::to_string(oracle.size()) + " closed subsets");

    classify::EnumOptions sn_only;
    sn_only.strongly_normal = true;
    std::vector<hg::IndexSet> enumerated_sn;
    for (const auto& d : classify::enumerate_closed(sig, sn_only))
        enumerated_sn.push_back(to_indices(classify::materialize(d)));
    ck.line("strongly-normal-enumeration", sorted(enumerated_sn) == sorted(oracle_sn),
            std::to_string(oracle_sn.size()) + " strongly normal");

    bool counts_ok = classify::count_closed(sig) == BigCount(oracle.size()) &&
                     classify::count_strongly_normal(sig) == BigCount(oracle_sn.size());
    std::map<std::size_t, std::size_t> by_size, sn_by_size;
    for (const auto& g : oracle) ++by_size[g.size()];
    for (const auto& g : oracle_sn) ++sn_by_size[g.size()];
    SubsetStats ambient{sig.thick_count(), sig.thin_count()};
    for (unsigned r = 0; r <= sig.p() + 1; ++r) {
        std::size_t sz = std::size_t{1} << r;
        counts_ok = counts_ok &&
                    classify::count_closed_of_size(ambient, r) ==
                        BigCount(by_size.count(sz) ? by_size[sz] : 0) &&
                    classify::count_strongly_normal_of_size(ambient, r) ==
                        BigCount(sn_by_size.count(sz) ? sn_by_size[sz] : 0);
    }
    ck.line("counts", counts_ok);

    // Recognized descriptors for each oracle subset, for the pairwise checks.
    std::vector<classify::ClosedDescriptor> recognized;
    recognized.reserve(oracle.size());
    bool recog_ok = true;
    for (const auto& g : oracle) {
        recognized.push_back(classify::recognize(sig, to_elements(g)));
        recog_ok = recog_ok &&
                   to_indices(classify::materialize(recognized.back())) == g;
    }
    ck.line("recognize-roundtrip", recog_ok);

    bool iso_ok = true;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (oracle[i].size() > 8) continue;
        for (std::size_t j = i; j < oracle.size(); ++j) {
            if (oracle[j].size() > 8) continue;
            ++pairs;
            bool brute = hg::brute_isomorphism_exists(table, oracle[i], table, oracle[j]);
            iso_ok = iso_ok &&
                     classify::is_isomorphic(recognized[i], recognized[j]) == brute;
        }
    }
    ck.line("isomorphism", iso_ok, std::to_string(pairs) + " pairs");

    bool aut_ok = true;
    std::size_t aut_checked = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (oracle[i].size() > 8) continue;
        ++aut_checked;
        aut_ok = aut_ok && classify::aut_descriptor(recognized[i]).order ==
                               hg::brute_automorphism_count(table, oracle[i]);
    }
    ck.line("automorphisms", aut_ok, std::to_string(aut_checked) + " subsets");

    const hg::IndexSet trivial{table.identity()};
    bool frattini_ok = true;
    for (const auto& g : oracle) frattini_ok = frattini_ok && hg::frattini(table, g) == trivial;
    ck.line("frattini", frattini_ok);

    bool thin_ok = true;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        bool fast = classify::is_residually_thin_fast(recognized[i]);
        thin_ok = thin_ok && hg::is_residually_thin(table, oracle[i]) == fast &&
                  hg::is_nilpotent(table, oracle[i]) == fast &&
                  classify::is_nilpotent_fast(recognized[i]) == fast;
    }
    ck.line("thin-predicates", thin_ok);

    return ck.all_ok;
}

bool run_verification(unsigned max_p, std::ostream& out) {
    if (max_p > 4) throw GuardError("verify: max_p exceeds 4");
    bool all_ok = true;
    unsigned signatures = 0;
    for (unsigned p = 0; p <= max_p; ++p) {
        for (Mask k = 0; k <= full_mask(p); ++k) {
            all_ok = verify_signature(Signature(p, k), out) && all_ok;
            ++signatures;
        }
    }
    out << "verification: " << (all_ok ? "PASS" : "FAIL") << " (" << signatures
        << " signatures)\n";
    return all_ok;
}

}  // namespace ea2hg
