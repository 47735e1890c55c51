#include "ea2hg/table.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace ea2hg::hg {

namespace {

Mask to_mask(const IndexSet& s) {
    Mask m = 0;
    for (ElementIndex i : s) m |= Mask{1} << i;
    return m;
}

IndexSet to_index_set(Mask m) {
    IndexSet out;
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

void check_subset(const TableHypergroup& t, const IndexSet& s, const char* what) {
    ElementIndex prev = -1;
    for (ElementIndex i : s) {
        if (i < 0 || i >= t.size())
            throw std::invalid_argument(std::string(what) + ": index out of range");
        if (i <= prev) throw std::invalid_argument(std::string(what) + ": not sorted/unique");
        prev = i;
    }
}

Mask star_mask(const TableHypergroup& t, Mask m) {
    Mask out = 0;
    while (m != 0) {
        out |= Mask{1} << t.star(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

Mask product_mask_sets(const TableHypergroup& t, Mask f, Mask g) {
    Mask out = 0;
    for (Mask mf = f; mf != 0; mf &= mf - 1) {
        ElementIndex b = std::countr_zero(mf);
        for (Mask mg = g; mg != 0; mg &= mg - 1) {
            out |= t.product_mask(b, std::countr_zero(mg));
        }
    }
    return out;
}

bool closed_mask(const TableHypergroup& t, Mask m) {
    Mask sm = star_mask(t, m);
    for (Mask mp = sm; mp != 0; mp &= mp - 1) {
        ElementIndex p = std::countr_zero(mp);
        for (Mask mq = m; mq != 0; mq &= mq - 1) {
            if (t.product_mask(p, std::countr_zero(mq)) & ~m) return false;
        }
    }
    return true;
}

Mask generated_mask(const TableHypergroup& t, Mask seed) {
    Mask m = seed | star_mask(t, seed) | (Mask{1} << t.identity());
    while (true) {
        Mask nm = m | product_mask_sets(t, m, m);
        if (nm == m) return m;
        m = nm;
    }
}

Mask commutator_mask(const TableHypergroup& t, Mask f, Mask g) {
    Mask vals = 0;
    for (Mask mb = f; mb != 0; mb &= mb - 1) {
        ElementIndex b = std::countr_zero(mb);
        for (Mask mc = g; mc != 0; mc &= mc - 1) {
            ElementIndex c = std::countr_zero(mc);
            // b* c* b c, left associated
            Mask m1 = t.product_mask(t.star(b), t.star(c));
            Mask m2 = product_mask_sets(t, m1, Mask{1} << b);
            vals |= product_mask_sets(t, m2, Mask{1} << c);
        }
    }
    return generated_mask(t, vals);
}

// Both masks assumed closed, f subset of g.
bool strongly_normal_mask(const TableHypergroup& t, Mask f, Mask g) {
    for (Mask mp = g; mp != 0; mp &= mp - 1) {
        ElementIndex p = std::countr_zero(mp);
        Mask left = product_mask_sets(t, Mask{1} << t.star(p), f);
        if (product_mask_sets(t, left, Mask{1} << p) & ~f) return false;
    }
    return true;
}

void require_closed(const TableHypergroup& t, const IndexSet& g, const char* what) {
    check_subset(t, g, what);
    if (g.empty() || !closed_mask(t, to_mask(g)))
        throw std::invalid_argument(std::string(what) + ": set is not a closed subset");
}

}  // namespace

TableHypergroup::TableHypergroup(int n, ElementIndex identity,
                                 std::vector<ElementIndex> star,
                                 std::vector<std::vector<IndexSet>> table)
    : n_(n), identity_(identity), star_(std::move(star)) {
    if (n_ < 1 || n_ > 64) throw std::invalid_argument("table size must be in [1, 64]");
    if (identity_ < 0 || identity_ >= n_) throw std::invalid_argument("identity out of range");
    if (star_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("star map has wrong length");
    for (ElementIndex s : star_) {
        if (s < 0 || s >= n_) throw std::invalid_argument("star image out of range");
    }
    if (table.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("table has wrong number of rows");
    table_.reserve(static_cast<std::size_t>(n_) * n_);
    for (auto& row : table) {
        if (row.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("ragged table row");
        for (auto& cell : row) {
            for (ElementIndex i : cell) {
                if (i < 0 || i >= n_) throw std::invalid_argument("table entry out of range");
            }
            std::sort(cell.begin(), cell.end());
            cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
            table_.push_back(std::move(cell));
        }
    }
    prod_mask_.reserve(table_.size());
    for (const IndexSet& cell : table_) prod_mask_.push_back(to_mask(cell));
}

AxiomReport validate_axioms(const TableHypergroup& t) {
    AxiomReport report;
    const int n = t.size();
    const ElementIndex e = t.identity();
    auto add = [&report](const char* axiom, std::initializer_list<ElementIndex> w) {
        report.violations.push_back({axiom, std::vector<ElementIndex>(w)});
    };

    bool empty_done = false;
    for (ElementIndex p = 0; p < n && !empty_done; ++p) {
        for (ElementIndex q = 0; q < n; ++q) {
            if (t.product(p, q).empty()) {
                add("nonempty", {p, q});
                empty_done = true;
                break;
            }
        }
    }
    for (ElementIndex p = 0; p < n; ++p) {
        if (t.product_mask(e, p) != (Mask{1} << p) || t.product_mask(p, e) != (Mask{1} << p)) {
            add("H2", {p});
            break;
        }
    }
    for (ElementIndex p = 0; p < n; ++p) {
        if (t.star(t.star(p)) != p) {
            add("star", {p});
            break;
        }
    }
    bool h3_done = false;
    for (ElementIndex p = 0; p < n && !h3_done; ++p) {
        for (ElementIndex q = 0; q < n && !h3_done; ++q) {
            for (ElementIndex r = 0; r < n; ++r) {
                bool in_qr = (t.product_mask(q, r) >> p) & 1;
                bool in_prs = (t.product_mask(p, t.star(r)) >> q) & 1;
                bool in_qsp = (t.product_mask(t.star(q), p) >> r) & 1;
                if (in_qr != in_prs || in_prs != in_qsp) {
                    add("H3", {p, q, r});
                    h3_done = true;
                    break;
                }
            }
        }
    }
    bool h1_done = false;
    for (ElementIndex p = 0; p < n && !h1_done; ++p) {
        for (ElementIndex q = 0; q < n && !h1_done; ++q) {
            for (ElementIndex r = 0; r < n; ++r) {
                Mask left = product_mask_sets(t, t.product_mask(p, q), Mask{1} << r);
                Mask right = product_mask_sets(t, Mask{1} << p, t.product_mask(q, r));
                if (left != right) {
                    add("H1", {p, q, r});
                    h1_done = true;
                    break;
                }
            }
        }
    }
    report.passed = report.violations.empty();
    return report;
}

IndexSet product_sets(const TableHypergroup& t, const IndexSet& f, const IndexSet& g) {
    check_subset(t, f, "product_sets F");
    check_subset(t, g, "product_sets G");
    return to_index_set(product_mask_sets(t, to_mask(f), to_mask(g)));
}

bool is_closed_subset(const TableHypergroup& t, const IndexSet& g) {
    check_subset(t, g, "is_closed_subset");
    if (g.empty()) throw std::invalid_argument("is_closed_subset: empty set");
    return closed_mask(t, to_mask(g));
}

std::vector<IndexSet> brute_closed_subsets(const TableHypergroup& t) {
    if (t.size() > 16) throw GuardError("brute_closed_subsets: n exceeds 16");
    const Mask ebit = Mask{1} << t.identity();
    const Mask all = full_mask(static_cast<unsigned>(t.size()));
    std::vector<IndexSet> out;
    for (Mask m = 0; m <= all; ++m) {
        if ((m & ebit) && closed_mask(t, m)) out.push_back(to_index_set(m));
    }
    return out;
}

IndexSet generated_closed_subset(const TableHypergroup& t, const IndexSet& seed) {
    check_subset(t, seed, "generated_closed_subset");
    return to_index_set(generated_mask(t, to_mask(seed)));
}

IndexSet thin_part(const TableHypergroup& t, const IndexSet& g) {
    check_subset(t, g, "thin_part");
    const Mask ebit = Mask{1} << t.identity();
    IndexSet out;
    for (ElementIndex p : g) {
        if (t.product_mask(t.star(p), p) == ebit) out.push_back(p);
    }
    return out;
}

IndexSet strong_core(const TableHypergroup& t, const IndexSet& g) {
    require_closed(t, g, "strong_core");
    Mask u = 0;
    for (ElementIndex p : g) u |= t.product_mask(t.star(p), p);
    return to_index_set(generated_mask(t, u));
}

bool is_strongly_normal(const TableHypergroup& t, const IndexSet& f, const IndexSet& g) {
    require_closed(t, f, "is_strongly_normal F");
    require_closed(t, g, "is_strongly_normal G");
    Mask fm = to_mask(f), gm = to_mask(g);
    if (fm & ~gm) throw std::invalid_argument("is_strongly_normal: F not contained in G");
    return strongly_normal_mask(t, fm, gm);
}

IndexSet commutator_closed_subset(const TableHypergroup& t, const IndexSet& f,
                                  const IndexSet& g) {
    check_subset(t, f, "commutator F");
    check_subset(t, g, "commutator G");
    return to_index_set(commutator_mask(t, to_mask(f), to_mask(g)));
}

bool is_residually_thin(const TableHypergroup& t, const IndexSet& g) {
    if (t.size() > 16) throw GuardError("is_residually_thin: n exceeds 16");
    require_closed(t, g, "is_residually_thin");
    const Mask ebit = Mask{1} << t.identity();
    std::unordered_map<Mask, bool> memo;
    auto rec = [&](auto&& self, Mask m) -> bool {
        if (m == ebit) return true;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        bool ok = false;
        // proper submasks containing e
        for (Mask f = (m - 1) & m; !ok; f = (f - 1) & m) {
            if ((f & ebit) && closed_mask(t, f) && strongly_normal_mask(t, f, m) &&
                self(self, f)) {
                ok = true;
            }
            if (f == 0) break;
        }
        memo.emplace(m, ok);
        return ok;
    };
    return rec(rec, to_mask(g));
}

bool is_nilpotent(const TableHypergroup& t, const IndexSet& g) {
    require_closed(t, g, "is_nilpotent");
    const Mask ebit = Mask{1} << t.identity();
    Mask gm = to_mask(g);
    Mask cur = gm;
    std::set<Mask> seen;
    while (true) {
        if (cur == ebit) return true;
        if (!seen.insert(cur).second) return false;
        cur = commutator_mask(t, cur, gm);
    }
}

IndexSet frattini(const TableHypergroup& t, const IndexSet& g) {
    if (t.size() > 16) throw GuardError("frattini: n exceeds 16");
    require_closed(t, g, "frattini");
    const Mask ebit = Mask{1} << t.identity();
    const Mask gm = to_mask(g);
    std::vector<Mask> proper;  // proper closed submasks of g
    for_each_submask(gm, [&](Mask m) {
        if ((m & ebit) && m != gm && closed_mask(t, m)) proper.push_back(m);
    });
    Mask inter = gm;
    bool any_maximal = false;
    for (Mask f : proper) {
        bool maximal = true;
        for (Mask h : proper) {
            if (h != f && (f & ~h) == 0 && h != gm) {  // f strictly below h < g
                maximal = false;
                break;
            }
        }
        if (maximal) {
            any_maximal = true;
            inter &= f;
        }
    }
    if (!any_maximal) return to_index_set(ebit);
    return to_index_set(inter);
}

namespace {

struct IsoSide {
    const TableHypergroup* t;
    std::vector<ElementIndex> elems;
    // fingerprint per position: (|p* p|, sorted row of |pq| sizes)
    std::vector<std::pair<int, std::vector<int>>> fp;
};

IsoSide make_side(const TableHypergroup& t, const IndexSet& g) {
    IsoSide side{&t, g, {}};
    side.fp.reserve(g.size());
    for (ElementIndex p : g) {
        std::vector<int> row;
        row.reserve(g.size());
        for (ElementIndex q : g)
            row.push_back(static_cast<int>(popcount(t.product_mask(p, q))));
        std::sort(row.begin(), row.end());
        side.fp.emplace_back(static_cast<int>(popcount(t.product_mask(t.star(p), p))),
                             std::move(row));
    }
    return side;
}

// Counts bijections g1 -> g2 fixing the identities and preserving all product
// sets. Exhaustive backtracking; fingerprints and partial product checks only
// prune, the leaf check decides.
std::uint64_t iso_count(const TableHypergroup& t1, const IndexSet& g1,
                        const TableHypergroup& t2, const IndexSet& g2,
                        bool stop_at_first) {
    if (g1.size() != g2.size()) return 0;
    const int sz = static_cast<int>(g1.size());
    IsoSide a = make_side(t1, g1);
    IsoSide b = make_side(t2, g2);

    // Assign the identity first, then the rest in natural order.
    std::vector<int> order;
    for (int i = 0; i < sz; ++i) {
        if (a.elems[static_cast<std::size_t>(i)] == t1.identity()) order.push_back(i);
    }
    for (int i = 0; i < sz; ++i) {
        if (a.elems[static_cast<std::size_t>(i)] != t1.identity()) order.push_back(i);
    }

    std::vector<int> pos_to_image(static_cast<std::size_t>(sz), -1);
    std::vector<ElementIndex> elem_image(static_cast<std::size_t>(t1.size()), -1);
    std::uint64_t used = 0;
    std::uint64_t found = 0;

    auto full_check = [&]() -> bool {
        for (int i = 0; i < sz; ++i) {
            for (int j = 0; j < sz; ++j) {
                Mask pm1 = t1.product_mask(a.elems[static_cast<std::size_t>(i)],
                                           a.elems[static_cast<std::size_t>(j)]);
                Mask pm2 = t2.product_mask(
                    b.elems[static_cast<std::size_t>(pos_to_image[static_cast<std::size_t>(i)])],
                    b.elems[static_cast<std::size_t>(pos_to_image[static_cast<std::size_t>(j)])]);
                Mask image = 0;
                for (Mask m = pm1; m != 0; m &= m - 1)
                    image |= Mask{1} << elem_image[static_cast<std::size_t>(std::countr_zero(m))];
                if (image != pm2) return false;
            }
        }
        return true;
    };

    auto partial_ok = [&](int i, int j) -> bool {
        // Necessary conditions over already-assigned pairs involving i.
        for (int k = 0; k < sz; ++k) {
            int jk = pos_to_image[static_cast<std::size_t>(k)];
            if (jk < 0) continue;
            for (auto [x, y, u, v] : {std::array<int, 4>{k, i, jk, j},
                                      std::array<int, 4>{i, k, j, jk}}) {
                Mask pm1 = t1.product_mask(a.elems[static_cast<std::size_t>(x)],
                                           a.elems[static_cast<std::size_t>(y)]);
                Mask pm2 = t2.product_mask(b.elems[static_cast<std::size_t>(u)],
                                           b.elems[static_cast<std::size_t>(v)]);
                if (popcount(pm1) != popcount(pm2)) return false;
                for (Mask m = pm1; m != 0; m &= m - 1) {
                    ElementIndex img = elem_image[static_cast<std::size_t>(std::countr_zero(m))];
                    if (img >= 0 && !((pm2 >> img) & 1)) return false;
                }
            }
        }
        return true;
    };

    auto dfs = [&](auto&& self, int depth) -> void {
        if (stop_at_first && found > 0) return;
        if (depth == sz) {
            if (full_check()) ++found;
            return;
        }
        int i = order[static_cast<std::size_t>(depth)];
        bool i_is_e = a.elems[static_cast<std::size_t>(i)] == t1.identity();
        for (int j = 0; j < sz; ++j) {
            if (used >> j & 1) continue;
            if (i_is_e != (b.elems[static_cast<std::size_t>(j)] == t2.identity())) continue;
            if (a.fp[static_cast<std::size_t>(i)] != b.fp[static_cast<std::size_t>(j)]) continue;
            pos_to_image[static_cast<std::size_t>(i)] = j;
            elem_image[static_cast<std::size_t>(a.elems[static_cast<std::size_t>(i)])] =
                b.elems[static_cast<std::size_t>(j)];
            used |= std::uint64_t{1} << j;
            if (partial_ok(i, j)) self(self, depth + 1);
            used &= ~(std::uint64_t{1} << j);
            elem_image[static_cast<std::size_t>(a.elems[static_cast<std::size_t>(i)])] = -1;
            pos_to_image[static_cast<std::size_t>(i)] = -1;
        }
    };
    dfs(dfs, 0);
    return found;
}

}  // namespace

bool brute_isomorphism_exists(const TableHypergroup& t1, const IndexSet& g1,
                              const TableHypergroup& t2, const IndexSet& g2) {
    if (g1.size() > 8 || g2.size() > 8)
        throw GuardError("brute_isomorphism_exists: subset exceeds 8 elements");
    require_closed(t1, g1, "brute_isomorphism_exists G1");
    require_closed(t2, g2, "brute_isomorphism_exists G2");
    return iso_count(t1, g1, t2, g2, true) > 0;
}

BigCount brute_automorphism_count(const TableHypergroup& t, const IndexSet& g) {
    if (g.size() > 8) throw GuardError("brute_automorphism_count: subset exceeds 8 elements");
    require_closed(t, g, "brute_automorphism_count");
    return BigCount{static_cast<unsigned long>(iso_count(t, g, t, g, false))};
}

std::string serialize(const TableHypergroup& t) {
    nlohmann::json j;
    j["n"] = t.size();
    j["identity"] = t.identity();
    std::vector<ElementIndex> star;
    for (ElementIndex p = 0; p < t.size(); ++p) star.push_back(t.star(p));
    j["star"] = star;
    std::vector<std::vector<IndexSet>> table;
    for (ElementIndex p = 0; p < t.size(); ++p) {
        std::vector<IndexSet> row;
        for (ElementIndex q = 0; q < t.size(); ++q) row.push_back(t.product(p, q));
        table.push_back(std::move(row));
    }
    j["table"] = table;
    return j.dump();
}

TableHypergroup parse_table(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        return TableHypergroup(j.at("n").get<int>(), j.at("identity").get<ElementIndex>(),
                               j.at("star").get<std::vector<ElementIndex>>(),
                               j.at("table").get<std::vector<std::vector<IndexSet>>>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed table document: ") + e.what());
    }
}

}  // namespace ea2hg::hg
