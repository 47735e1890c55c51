#include "ea2hg/classify.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace ea2hg::classify {

namespace {

bool in_pair_set(const SubsetStats& x,
                 std::initializer_list<std::pair<unsigned, unsigned>> set) {
    for (auto [s, r2] : set) {
        if (x.s == s && x.r2 == r2) return true;
    }
    return false;
}

}  // namespace

ClosedDescriptor::ClosedDescriptor(const Signature& sig, Mask thick_support,
                                   gf2::Gf2Subspace thin_subgroup)
    : sig_(sig), thick_support_(thick_support), thin_subgroup_(std::move(thin_subgroup)) {
    if (thick_support_ & ~sig_.thick_mask())
        throw std::invalid_argument("descriptor: A must consist of thick generators");
    if (thin_subgroup_.ambient_width() != sig_.thin_count())
        throw std::invalid_argument("descriptor: F has the wrong ambient width");
}

ElementSet materialize(const ClosedDescriptor& d) {
    const unsigned exponent = popcount(d.thick_support()) + d.thin_subgroup().dim();
    if (exponent > 20) throw GuardError("materialize: subset exceeds 2^20 elements");
    std::vector<Mask> members = gf2::subspace_members(d.thin_subgroup());
    ElementSet out;
    out.reserve(std::size_t{1} << exponent);
    for_each_submask(d.thick_support(), [&](Mask t) {
        for (Mask f : members) out.push_back(t | unpack_thin(d.sig(), f));
    });
    std::sort(out.begin(), out.end());
    return out;
}

ClosedDescriptor recognize(const Signature& sig, const ElementSet& g) {
    if (g.empty()) throw std::invalid_argument("recognize: empty set");
    Mask a = 0;
    std::vector<Mask> thin_parts;
    thin_parts.reserve(g.size());
    for (Element x : g) {
        if (x > sig.element_space())
            throw std::invalid_argument("recognize: support mask out of range");
        a |= x & sig.thick_mask();
        thin_parts.push_back(pack_thin(sig, x & sig.thin_mask()));
    }
    ClosedDescriptor d(sig, a, gf2::span(sig.thin_count(), thin_parts));
    ElementSet expect = materialize(d);
    ElementSet sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (expect != sorted)
        throw NotClosedError("recognize: set is not a closed subset of the signature");
    return d;
}

ClosedSubsetStream::ClosedSubsetStream(const Signature& sig, EnumOptions opts)
    : sig_(sig), opts_(opts) {
    if (sig_.thin_count() > 14)
        throw GuardError("enumerate_closed: thin coordinate count exceeds 14");
    a_ = opts_.strongly_normal ? sig_.thick_mask() : 0;
}

bool ClosedSubsetStream::start_thick(Mask a) {
    a_ = a;
    std::optional<unsigned> k;
    if (opts_.size_exponent) {
        unsigned pa = popcount(a);
        if (*opts_.size_exponent < pa) return false;
        k = *opts_.size_exponent - pa;
        if (*k > sig_.thin_count()) return false;
    }
    subspaces_.emplace(sig_.thin_count(), k);
    return true;
}

const ClosedDescriptor* ClosedSubsetStream::next() {
    if (done_) return nullptr;
    while (true) {
        if (fresh_) {
            fresh_ = false;
            if (!start_thick(a_)) subspaces_.reset();
        } else if (subspaces_) {
            if (const gf2::Gf2Subspace* s = subspaces_->next()) {
                if (!current_) {
                    current_.emplace(sig_, a_, *s);
                } else {
                    // reuse the buffer; copy-assign keeps the vector capacity
                    current_->thick_support_ = a_;
                    current_->thin_subgroup_ = *s;
                }
                return &*current_;
            }
            subspaces_.reset();
        }
        if (!subspaces_) {
            // advance A to the next submask of K, ascending
            if (opts_.strongly_normal || a_ == sig_.thick_mask()) {
                done_ = true;
                return nullptr;
            }
            Mask next_a = (a_ - sig_.thick_mask()) & sig_.thick_mask();
            if (!start_thick(next_a)) subspaces_.reset();
        }
    }
}

std::vector<ClosedDescriptor> enumerate_closed(const Signature& sig, EnumOptions opts) {
    ClosedSubsetStream stream(sig, opts);
    std::vector<ClosedDescriptor> out;
    while (const ClosedDescriptor* d = stream.next()) out.push_back(*d);
    return out;
}

BigCount count_closed(const Signature& sig) {
    BigCount subspaces = 0;
    for (unsigned r = 0; r <= sig.thin_count(); ++r)
        subspaces += gf2::gaussian_binomial(sig.thin_count(), r);
    return pow2(sig.thick_count()) * subspaces;
}

BigCount count_strongly_normal(const Signature& sig) {
    BigCount total = 0;
    for (unsigned r = 0; r <= sig.thin_count(); ++r)
        total += gf2::gaussian_binomial(sig.thin_count(), r);
    return total;
}

BigCount count_closed_of_size(const SubsetStats& ambient, unsigned r) {
    const unsigned s = ambient.s, r2 = ambient.r2;
    auto term = [&](unsigned t) -> BigCount {
        return binomial(s, t) * gf2::gaussian_binomial(r2, r - t);
    };
    BigCount total = 0;
    if (r <= std::min(s, r2)) {
        for (unsigned t = 0; t <= r; ++t) total += term(t);
    } else if (s + 1 <= r && r <= r2) {
        for (unsigned t = 0; t <= s; ++t) total += term(t);
    } else if (r2 + 1 <= r && r <= s) {
        for (unsigned t = r - r2; t <= r; ++t) total += term(t);
    } else {  // r > max(s, r2)
        if (r > s + r2) return 0;
        for (unsigned t = std::min(s, r - r2); t <= std::max(s, r - r2); ++t) total += term(t);
    }
    return total;
}

BigCount count_strongly_normal_of_size(const SubsetStats& ambient, unsigned r) {
    if (r < ambient.s) return 0;
    return gf2::gaussian_binomial(ambient.r2, r - ambient.s);
}

bool is_isomorphic(const ClosedDescriptor& a, const ClosedDescriptor& b) {
    return a.stats() == b.stats();
}

std::vector<IsoClassStat> iso_class_stats(const Signature& sig) {
    std::vector<IsoClassStat> out;
    for (unsigned s = 0; s <= sig.thick_count(); ++s) {
        for (unsigned r2 = 0; r2 <= sig.thin_count(); ++r2) {
            out.push_back({s, r2,
                           binomial(sig.thick_count(), s) *
                               gf2::gaussian_binomial(sig.thin_count(), r2)});
        }
    }
    return out;
}

BigCount num_iso_classes_within(const SubsetStats& ambient) {
    return BigCount{(ambient.s + 1)} * (ambient.r2 + 1);
}

AutDescriptor aut_descriptor(const ClosedDescriptor& d) {
    SubsetStats st = d.stats();
    return {st.s, st.r2, factorial(st.s) * gf2::gl2_order(st.r2)};
}

bool aut_groups_isomorphic(const AutDescriptor& a, const AutDescriptor& b) {
    const SubsetStats sa{a.s, a.r2}, sb{b.s, b.r2};
    // (s, r2) pairs whose automorphism group collapses to the trivial group,
    // and those that collapse to S_3 (GL(2,2) included).
    const auto trivial = {std::pair<unsigned, unsigned>{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const auto s3 = {std::pair<unsigned, unsigned>{0, 2}, {1, 2}, {3, 0}, {3, 1}};
    if (in_pair_set(sa, trivial) && in_pair_set(sb, trivial)) return true;
    if (in_pair_set(sa, s3) && in_pair_set(sb, s3)) return true;
    return sa == sb;
}

unsigned dimension(const ClosedDescriptor& d) {
    if (d.thick_support() != 0 && d.thin_subgroup().dim() == 0) return 1;
    return d.thin_subgroup().dim();
}

std::vector<Element> find_basis(const ClosedDescriptor& d) {
    const Mask a = d.thick_support();
    const auto& rows = d.thin_subgroup().basis();
    if (rows.empty()) {
        if (a == 0) return {};
        return {a};
    }
    std::vector<Element> basis;
    basis.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Mask thin = unpack_thin(d.sig(), rows[i]);
        basis.push_back(i == 0 ? (a | thin) : thin);
    }
    return basis;
}

bool is_residually_thin_fast(const ClosedDescriptor& d) { return d.thick_support() == 0; }

bool is_nilpotent_fast(const ClosedDescriptor& d) { return d.thick_support() == 0; }

ClosedDescriptor frattini_fast(const ClosedDescriptor& d) {
    return ClosedDescriptor(d.sig(), 0, gf2::Gf2Subspace(d.sig().thin_count()));
}

std::string format_descriptor(const ClosedDescriptor& d) {
    std::string out = "A={";
    bool first = true;
    for (Mask m = d.thick_support(); m != 0; m &= m - 1) {
        if (!first) out += ',';
        out += std::to_string(std::countr_zero(m) + 1);
        first = false;
    }
    out += "};F=[";
    first = true;
    for (Mask row : d.thin_subgroup().basis()) {
        if (!first) out += ',';
        out += "0b";
        bool leading = true;
        for (unsigned b = d.sig().thin_count(); b-- > 0;) {
            bool bit = (row >> b) & 1;
            if (leading && !bit && b > 0) continue;
            leading = false;
            out += bit ? '1' : '0';
        }
        if (leading) out += '0';
        first = false;
    }
    return out + "]";
}

namespace {

Mask parse_basis_mask(std::string_view item, unsigned width) {
    Mask value = 0;
    if (item.starts_with("0b") || item.starts_with("0B")) {
        item.remove_prefix(2);
        if (item.empty()) throw std::invalid_argument("empty binary mask in descriptor");
        for (char c : item) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("bad binary digit in descriptor mask");
            value = (value << 1) | static_cast<Mask>(c - '0');
        }
    } else {
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw std::invalid_argument("bad basis mask in descriptor: " + std::string(item));
    }
    if (width < 64 && value >= (Mask{1} << width))
        throw std::invalid_argument("basis mask exceeds the thin coordinate count");
    return value;
}

}  // namespace

ClosedDescriptor parse_descriptor(const Signature& sig, std::string_view text) {
    auto semi = text.find(";F=[");
    if (!text.starts_with("A={") || semi == std::string_view::npos || !text.ends_with("]"))
        throw std::invalid_argument("descriptor must look like A={..};F=[..]: " +
                                    std::string(text));
    std::string_view a_part = text.substr(3, semi - 3);
    if (a_part.empty() || a_part.back() != '}')
        throw std::invalid_argument("descriptor A part must end with }");
    a_part.remove_suffix(1);
    std::string_view f_part = text.substr(semi + 4);
    f_part.remove_suffix(1);

    Mask a = 0;
    while (!a_part.empty()) {
        auto comma = a_part.find(',');
        std::string_view item = a_part.substr(0, comma);
        unsigned idx = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), idx);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw std::invalid_argument("bad thick index in descriptor: " + std::string(item));
        if (idx < 1 || idx > sig.p())
            throw std::invalid_argument("thick index out of range: " + std::string(item));
        Mask bit = Mask{1} << (idx - 1);
        if (!(sig.thick_mask() & bit))
            throw std::invalid_argument("descriptor A names a thin generator");
        a |= bit;
        if (comma == std::string_view::npos) break;
        a_part.remove_prefix(comma + 1);
    }

    std::vector<Mask> vectors;
    while (!f_part.empty()) {
        auto comma = f_part.find(',');
        vectors.push_back(parse_basis_mask(f_part.substr(0, comma), sig.thin_count()));
        if (comma == std::string_view::npos) break;
        f_part.remove_prefix(comma + 1);
    }
    return ClosedDescriptor(sig, a, gf2::span(sig.thin_count(), vectors));
}

}  // namespace ea2hg::classify
