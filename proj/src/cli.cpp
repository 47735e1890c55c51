#include "ea2hg/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ea2hg/classify.hpp"
#include "ea2hg/ea2.hpp"
#include "ea2hg/table.hpp"
#include "ea2hg/verify.hpp"

namespace ea2hg {

namespace {

enum class Command { kTable, kEnumerate, kCount, kClasses, kIso, kAut, kBasis, kVerify };

struct RunConfig {
    Command command = Command::kTable;
    std::optional<Signature> sig;
    bool strongly_normal = false;
    std::optional<unsigned> size_exponent;
    std::vector<std::string> subsets;
    std::string format = "text";
    unsigned max_p = 2;
};

const Signature& require_sig(const RunConfig& cfg) {
    if (!cfg.sig) throw CLI::RequiredError("--sig");
    return *cfg.sig;
}

// Whole-H descriptor: A = K, F = the full thin space.
classify::ClosedDescriptor whole_descriptor(const Signature& sig) {
    std::vector<Mask> units;
    for (unsigned b = 0; b < sig.thin_count(); ++b) units.push_back(Mask{1} << b);
    return classify::ClosedDescriptor(sig, sig.thick_mask(),
                                      gf2::span(sig.thin_count(), units));
}

classify::ClosedDescriptor subset_or_whole(const RunConfig& cfg) {
    const Signature& sig = require_sig(cfg);
    if (cfg.subsets.empty()) return whole_descriptor(sig);
    return classify::parse_descriptor(sig, cfg.subsets.front());
}

void cmd_table(const RunConfig& cfg, std::ostream& out) {
    const Signature& sig = require_sig(cfg);
    hg::TableHypergroup table = to_table(sig);
    if (cfg.format == "structured") {
        out << hg::serialize(table) << '\n';
        return;
    }
    const int n = table.size();
    auto cell_text = [&](const hg::IndexSet& s) {
        std::string text = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0) text += ',';
            text += format_element(static_cast<Element>(s[i]));
        }
        return text + "}";
    };
    std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(n) + 1);
    grid[0].push_back("o");
    for (int x = 0; x < n; ++x) grid[0].push_back(format_element(static_cast<Element>(x)));
    for (int x = 0; x < n; ++x) {
        auto& row = grid[static_cast<std::size_t>(x) + 1];
        row.push_back(format_element(static_cast<Element>(x)));
        for (int y = 0; y < n; ++y) row.push_back(cell_text(table.product(x, y)));
    }
    std::vector<std::size_t> width(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : grid) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size())
                line += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

std::string descriptor_record(const classify::ClosedDescriptor& d) {
    classify::AutDescriptor aut = classify::aut_descriptor(d);
    std::ostringstream line;
    line << classify::format_descriptor(d) << " s=" << aut.s << " r2=" << aut.r2
         << " size=" << d.size().get_str() << " aut=" << aut.order.get_str();
    return line.str();
}

void cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    const Signature& sig = require_sig(cfg);
    classify::ClosedSubsetStream stream(
        sig, {.size_exponent = cfg.size_exponent, .strongly_normal = cfg.strongly_normal});
    std::size_t count = 0;
    while (const classify::ClosedDescriptor* d = stream.next()) {
        out << descriptor_record(*d) << '\n';
        ++count;
    }
    if (cfg.format == "text") out << "total: " << count << '\n';
}

void cmd_count(const RunConfig& cfg, std::ostream& out) {
    const Signature& sig = require_sig(cfg);
    SubsetStats ambient{sig.thick_count(), sig.thin_count()};
    BigCount result;
    if (cfg.size_exponent) {
        result = cfg.strongly_normal
                     ? classify::count_strongly_normal_of_size(ambient, *cfg.size_exponent)
                     : classify::count_closed_of_size(ambient, *cfg.size_exponent);
    } else {
        result = cfg.strongly_normal ? classify::count_strongly_normal(sig)
                                     : classify::count_closed(sig);
    }
    out << result.get_str() << '\n';
}

void cmd_classes(const RunConfig& cfg, std::ostream& out) {
    const Signature& sig = require_sig(cfg);
    std::vector<classify::IsoClassStat> stats = classify::iso_class_stats(sig);
    BigCount total = 0;
    for (const auto& row : stats) {
        out << "s=" << row.s << " r2=" << row.r2
            << " cardinality=" << row.cardinality.get_str() << '\n';
        total += row.cardinality;
    }
    if (cfg.format == "text")
        out << "classes: " << stats.size() << " subsets: " << total.get_str() << '\n';
}

void cmd_iso(const RunConfig& cfg, std::ostream& out) {
    const Signature& sig = require_sig(cfg);
    if (cfg.subsets.size() != 2)
        throw CLI::ValidationError("iso needs exactly two --subset descriptors");
    classify::ClosedDescriptor a = classify::parse_descriptor(sig, cfg.subsets[0]);
    classify::ClosedDescriptor b = classify::parse_descriptor(sig, cfg.subsets[1]);
    out << "isomorphic=" << (classify::is_isomorphic(a, b) ? "true" : "false") << '\n';
}

void cmd_aut(const RunConfig& cfg, std::ostream& out) {
    classify::AutDescriptor aut = classify::aut_descriptor(subset_or_whole(cfg));
    out << "s=" << aut.s << " r2=" << aut.r2 << " order=" << aut.order.get_str() << '\n';
}

void cmd_basis(const RunConfig& cfg, std::ostream& out) {
    classify::ClosedDescriptor d = subset_or_whole(cfg);
    std::vector<Element> basis = classify::find_basis(d);
    out << "dim=" << classify::dimension(d) << " basis=[";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i > 0) out << ',';
        out << format_element(basis[i]);
    }
    out << "]\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations with elementary abelian 2-hypergroups"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sig_text;
    app.add_option("--sig", sig_text, "signature, e.g. p=2,thick=2 (thick is 1-based)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    CLI::App* table = app.add_subcommand("table", "print the hypermultiplication table");
    CLI::App* enumerate =
        app.add_subcommand("enumerate", "stream all closed subsets as descriptor records");
    CLI::App* count = app.add_subcommand("count", "count closed subsets");
    CLI::App* classes = app.add_subcommand("classes", "isomorphism class statistics");
    CLI::App* iso = app.add_subcommand("iso", "decide whether two closed subsets are isomorphic");
    CLI::App* aut = app.add_subcommand("aut", "automorphism group descriptor");
    CLI::App* basis = app.add_subcommand("basis", "basis and dimension of a closed subset");
    CLI::App* verify =
        app.add_subcommand("verify", "run every oracle cross-check up to --max-p");

    for (CLI::App* sub : {enumerate, count}) {
        sub->add_flag("--strongly-normal", cfg.strongly_normal,
                      "restrict to strongly normal closed subsets");
        sub->add_option_function<unsigned>(
            "--size", [&cfg](const unsigned& r) { cfg.size_exponent = r; },
            "restrict to subsets of 2^<r> elements");
    }
    for (CLI::App* sub : {iso, aut, basis}) {
        sub->add_option("--subset", cfg.subsets,
                        "closed-subset descriptor A={i,...};F=[mask,...]");
    }
    verify->add_option("--max-p", cfg.max_p, "largest generator count to sweep")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));

        if (!sig_text.empty()) cfg.sig = parse_signature(sig_text);
        if (table->parsed()) cfg.command = Command::kTable;
        if (enumerate->parsed()) cfg.command = Command::kEnumerate;
        if (count->parsed()) cfg.command = Command::kCount;
        if (classes->parsed()) cfg.command = Command::kClasses;
        if (iso->parsed()) cfg.command = Command::kIso;
        if (aut->parsed()) cfg.command = Command::kAut;
        if (basis->parsed()) cfg.command = Command::kBasis;
        if (verify->parsed()) cfg.command = Command::kVerify;

        switch (cfg.command) {
            case Command::kTable: cmd_table(cfg, out); break;
            case Command::kEnumerate: cmd_enumerate(cfg, out); break;
            case Command::kCount: cmd_count(cfg, out); break;
            case Command::kClasses: cmd_classes(cfg, out); break;
            case Command::kIso: cmd_iso(cfg, out); break;
            case Command::kAut: cmd_aut(cfg, out); break;
            case Command::kBasis: cmd_basis(cfg, out); break;
            case Command::kVerify:
                return run_verification(cfg.max_p, out) ? 0 : 1;
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        err << "guard violation: " << e.what() << '\n';
        return 3;
    } catch (const NotClosedError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ea2hg
