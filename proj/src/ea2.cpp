#include "ea2hg/ea2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

#include "ea2hg/gf2.hpp"

namespace ea2hg {

namespace {

void check_element(const Signature& sig, Element x, const char* what) {
    if (x > sig.element_space())
        throw std::invalid_argument(std::string(what) + ": support mask out of range");
}

unsigned parse_uint(std::string_view text, const char* what) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("expected a number in ") + what);
    return value;
}

}  // namespace

Signature::Signature(unsigned p, Mask thick_mask) : p_(p), thick_(thick_mask) {
    if (p > kMaxWidth)
        throw std::invalid_argument("signature: p exceeds " + std::to_string(kMaxWidth));
    if (thick_ > full_mask(p_))
        throw std::invalid_argument("signature: thick mask out of range");
}

ElementSet multiply(const Signature& sig, Element x, Element y) {
    check_element(sig, x, "multiply");
    check_element(sig, y, "multiply");
    Mask forced = x ^ y;
    Mask free = x & y & sig.thick_mask();
    ElementSet out;
    out.reserve(std::size_t{1} << popcount(free));
    for_each_submask(free, [&](Mask u) { out.push_back(forced | u); });
    return out;  // forced and free are disjoint, so the order is ascending
}

hg::TableHypergroup to_table(const Signature& sig) {
    if (sig.p() > 4) throw GuardError("to_table: p exceeds 4");
    const int n = 1 << sig.p();
    std::vector<hg::ElementIndex> star(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) star[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<hg::IndexSet>> table(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        auto& row = table[static_cast<std::size_t>(x)];
        row.resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            ElementSet prod = multiply(sig, static_cast<Element>(x), static_cast<Element>(y));
            hg::IndexSet cell;
            cell.reserve(prod.size());
            for (Element m : prod) cell.push_back(static_cast<hg::ElementIndex>(m));
            row[static_cast<std::size_t>(y)] = std::move(cell);
        }
    }
    return hg::TableHypergroup(n, 0, std::move(star), std::move(table));
}

std::pair<Element, Element> plus_minus(const Signature& sig, Element x) {
    check_element(sig, x, "plus_minus");
    return {x & sig.thick_mask(), x & sig.thin_mask()};
}

unsigned s_of(const Signature& sig, Element x) {
    check_element(sig, x, "s_of");
    return popcount(x & sig.thick_mask());
}

SubsetStats subset_stats(const Signature& sig, const ElementSet& g) {
    SubsetStats stats;
    std::vector<Mask> thin_parts;
    thin_parts.reserve(g.size());
    for (Element x : g) {
        check_element(sig, x, "subset_stats");
        stats.s = std::max(stats.s, s_of(sig, x));
        thin_parts.push_back(pack_thin(sig, x & sig.thin_mask()));
    }
    stats.r2 = gf2::span(sig.thin_count(), thin_parts).dim();
    return stats;
}

Mask pack_thin(const Signature& sig, Mask x) {
    Mask packed = 0;
    unsigned out_bit = 0;
    for (Mask m = sig.thin_mask(); m != 0; m &= m - 1) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(m));
        packed |= ((x >> bit) & 1) << out_bit;
        ++out_bit;
    }
    return packed;
}

Mask unpack_thin(const Signature& sig, Mask packed) {
    Mask x = 0;
    unsigned in_bit = 0;
    for (Mask m = sig.thin_mask(); m != 0; m &= m - 1) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(m));
        x |= ((packed >> in_bit) & 1) << bit;
        ++in_bit;
    }
    return x;
}

std::string format_signature(const Signature& sig) {
    std::string out = "p=" + std::to_string(sig.p());
    if (sig.thick_mask() != 0) {
        out += ",thick=";
        bool first = true;
        for (Mask m = sig.thick_mask(); m != 0; m &= m - 1) {
            if (!first) out += ',';
            out += std::to_string(std::countr_zero(m) + 1);
            first = false;
        }
    }
    return out;
}

Signature parse_signature(std::string_view text) {
    if (!text.starts_with("p="))
        throw std::invalid_argument("signature must start with \"p=\": " + std::string(text));
    text.remove_prefix(2);
    std::string_view p_part = text;
    std::string_view thick_part;
    if (auto pos = text.find(",thick="); pos != std::string_view::npos) {
        p_part = text.substr(0, pos);
        thick_part = text.substr(pos + 7);
    }
    unsigned p = parse_uint(p_part, "signature p");
    Signature sig(p, 0);
    Mask thick = 0;
    while (!thick_part.empty()) {
        auto comma = thick_part.find(',');
        std::string_view item = thick_part.substr(0, comma);
        unsigned idx = parse_uint(item, "thick index");
        if (idx < 1 || idx > p)
            throw std::invalid_argument("thick index out of range: " + std::string(item));
        thick |= Mask{1} << (idx - 1);
        if (comma == std::string_view::npos) break;
        thick_part.remove_prefix(comma + 1);
    }
    return Signature(p, thick);
}

std::string format_element(Element x) {
    std::string out = "{";
    bool first = true;
    for (Mask m = x; m != 0; m &= m - 1) {
        if (!first) out += ',';
        out += std::to_string(std::countr_zero(m) + 1);
        first = false;
    }
    return out + "}";
}

Element parse_element(std::string_view text, const Signature& sig) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw std::invalid_argument("element must look like {i,j,...}: " + std::string(text));
    text = text.substr(1, text.size() - 2);
    Element x = 0;
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        unsigned idx = parse_uint(item, "support index");
        if (idx < 1 || idx > sig.p())
            throw std::invalid_argument("support index out of range: " + std::string(item));
        x |= Mask{1} << (idx - 1);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return x;
}

}  // namespace ea2hg
