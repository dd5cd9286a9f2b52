#include "treepack/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "treepack/labeling.hpp"
#include "treepack/oracle.hpp"
#include "treepack/path_packing.hpp"
#include "treepack/tree_packing.hpp"
#include "treepack/verifier.hpp"

namespace treepack {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Tree read_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_tree(buf.str());
}

Vertex vertex_arg(const Tree& t, int one_based) {
    if (one_based < 1 || one_based > t.size())
        throw Error(ErrorCode::IdOutOfRange, "vertex " + std::to_string(one_based) + " is not in the tree");
    return one_based - 1;
}

ordered_json report_json(const VerificationReport& r) { return ordered_json::parse(r.to_json()); }

void print_report(std::ostream& out, const VerificationReport& r) {
    for (const auto& [name, c] : r.conditions) {
        out << "  " << name << ": " << (c.vacuous ? "vacuous" : c.ok ? "ok" : "FAIL");
        if (c.witness) out << " (" << *c.witness << ")";
        out << '\n';
    }
    if (r.label_count) out << "  label_count: " << *r.label_count << '\n';
    out << "overall: " << (r.overall() ? "ok" : "FAIL") << '\n';
}

std::string labels_text(const std::vector<int>& labels) { return ordered_json(labels).dump(); }

struct PackArgs {
    int power = 6;
    std::string input;
    int vertex = 0;
    std::string format = "text";
};

int run_pack(const PackArgs& a, std::ostream& out) {
    Tree t = read_tree(a.input);
    std::optional<Permutation> sigma;
    VerificationReport report;
    std::vector<std::string> trace;
    std::optional<LabeledPacking> labeled;
    Vertex x = -1;
    if (a.power == 4) {
        auto view = PathView::from_tree(t);
        sigma = path4_placement(view);
        report = verify_certificate(t, *sigma, CertificateKind::path4(view.first(), view.last()));
        labeled = labeled_pack_path4(view);
        x = view.first();
    } else {
        auto kind = a.power == 6 ? PlacementKind::Well : PlacementKind::Good;
        if (a.vertex) {
            x = vertex_arg(t, a.vertex);
        } else {
            for (x = 0; kind == PlacementKind::Good && x < t.size() && is_bad_vertex(t, x);) ++x;
        }
        auto c = construct_placement(t, x, kind);
        sigma = c.sigma;
        trace = c.trace;
        report = verify_certificate(t, *sigma, kind == PlacementKind::Well ? CertificateKind::well_tree(x)
                                                                          : CertificateKind::good_tree(x));
        labeled = a.power == 6 ? labeled_pack_t6(t) : labeled_pack_t5(t);
    }
    if (a.format == "json") {
        ordered_json j;
        j["power"] = a.power;
        j["vertex"] = x + 1;
        j["sigma"] = format_cycles(*sigma);
        j["report"] = report_json(report);
        j["trace"] = trace;
        j["labeled"] = {{"sigma", format_cycles(labeled->sigma)},
                        {"labels", labeled->labels},
                        {"label_count", labeled->label_count}};
        out << j.dump() << '\n';
    } else {
        out << "sigma: " << format_cycles(*sigma) << '\n';
        out << "vertex: " << x + 1 << '\n';
        print_report(out, report);
        out << "labeled sigma: " << format_cycles(labeled->sigma) << '\n';
        out << "labels: " << labels_text(labeled->labels) << '\n';
        out << "label count: " << labeled->label_count << '\n';
    }
    return report.overall() ? kOk : kFailed;
}

struct VerifyArgs {
    int power = 6;
    std::string input;
    std::string sigma;
    int vertex = 0;
    std::string labels;
};

// Conditions common to every power: the 2-placement and power clauses.
VerificationReport plain_report(const Tree& t, const Permutation& s, int k) {
    VerificationReport r = verify_two_placement(t, s);
    for (auto& [name, c] : verify_power_containment(t, s, k).conditions) r.add(name, c);
    return r;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
    Tree t = read_tree(a.input);
    Permutation s = parse_cycles(t.size(), a.sigma);
    VerificationReport report;
    if (a.power == 4 && is_path(t)) {
        auto view = PathView::from_tree(t);
        report = verify_certificate(t, s, CertificateKind::path4(view.first(), view.last()));
        if (!report.overall()) {
            auto flipped = verify_certificate(t, s, CertificateKind::path4(view.last(), view.first()));
            if (flipped.overall()) report = flipped;
        }
    } else if (a.vertex && (a.power == 5 || a.power == 6)) {
        Vertex x = vertex_arg(t, a.vertex);
        report = verify_certificate(t, s, a.power == 6 ? CertificateKind::well_tree(x) : CertificateKind::good_tree(x));
    } else {
        report = plain_report(t, s, a.power);
    }
    if (!a.labels.empty()) {
        std::vector<int> labels;
        try {
            labels = ordered_json::parse(a.labels).get<std::vector<int>>();
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("labels must be a JSON integer array: ") + e.what());
        }
        auto lr = verify_labeled_packing(t, s, labels, a.power);
        for (auto& [name, c] : lr.conditions) report.add(name, c);
        report.label_count = lr.label_count;
    }
    print_report(out, report);
    return report.overall() ? kOk : kFailed;
}

struct OracleArgs {
    std::string input;
    int power = 6;
    bool count_labels = false;
    int limit = 1;
};

int run_oracle(const OracleArgs& a, std::ostream& out) {
    Tree t = read_tree(a.input);
    if (a.count_labels) {
        int best = max_label_count(t, a.power);
        if (best == 0) {
            out << "no placement exists\n";
            return kFailed;
        }
        out << "max label count: " << best << '\n';
        return kOk;
    }
    auto found = search_placements(t, SearchConstraints::placement(t, a.power), a.limit);
    if (found.empty()) {
        out << "no placement exists\n";
        return kFailed;
    }
    for (const auto& s : found) out << format_cycles(s) << '\n';
    return kOk;
}

struct BatchArgs {
    int max_n = 9;
    int samples = 20;
    bool fallback = false;
};

struct ItemResult {
    int well = 0, good = 0, labeled = 0, fallbacks = 0;
    std::vector<std::string> failures;
};

ItemResult check_tree(const Tree& t, bool fallback) {
    ItemResult r;
    if (is_star(t)) return r;
    ConstructionOptions opts{fallback};
    auto attempt = [&](Vertex x, PlacementKind kind) {
        try {
            auto c = construct_placement(t, x, kind, opts);
            if (c.used_oracle_fallback) ++r.fallbacks;
            auto cert = kind == PlacementKind::Well ? CertificateKind::well_tree(x) : CertificateKind::good_tree(x);
            auto report = verify_certificate(t, c.sigma, cert);
            if (report.overall()) return;
            std::string trace;
            for (const auto& line : c.trace) trace += "\n      " + line;
            r.failures.push_back(std::string(to_string(kind)) + " " + canonical_form(t) + " x=" +
                                 std::to_string(x + 1) + ": " + report.summary() + trace);
        } catch (const Error& e) {
            r.failures.push_back(std::string(to_string(kind)) + " " + canonical_form(t) + " x=" + std::to_string(x + 1) +
                                 ": " + e.what());
        }
    };
    for (Vertex x = 0; x < t.size(); ++x) {
        attempt(x, PlacementKind::Well);
        ++r.well;
        if (!is_bad_vertex(t, x)) {
            attempt(x, PlacementKind::Good);
            ++r.good;
        }
    }
    for (int k : {5, 6}) {
        try {
            auto lp = k == 6 ? labeled_pack_t6(t) : labeled_pack_t5(t);
            int m = compute_m_T(t).count;
            int need = k == 6 ? m + (t.size() - m + 4) / 5 : m + 1;
            bool ok = k == 6 ? lp.label_count >= need : lp.label_count == need;
            if (!ok || lp.label_count > lambda2_upper_bound(t))
                r.failures.push_back("labeled k=" + std::to_string(k) + " " + canonical_form(t) + ": label count " +
                                     std::to_string(lp.label_count));
        } catch (const Error& e) {
            r.failures.push_back("labeled k=" + std::to_string(k) + " " + canonical_form(t) + ": " + e.what());
        }
        ++r.labeled;
    }
    return r;
}

int run_batch(const BatchArgs& a, std::ostream& out) {
    if (a.max_n < 4) throw UsageError("--max-n must be at least 4");
    struct Item {
        int n;
        Tree t;
    };
    std::vector<Item> items;
    for (int n = 4; n <= a.max_n; ++n) {
        if (n <= 9) {
            for (auto& t : enumerate_trees(n)) items.push_back({n, std::move(t)});
        } else {
            for (int s = 0; s < a.samples; ++s)
                items.push_back({n, random_tree(n, static_cast<std::uint64_t>(n) * 1000003u + static_cast<std::uint64_t>(s))});
        }
    }
    std::vector<ItemResult> results(items.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < items.size(); i = next++) results[i] = check_tree(items[i].t, a.fallback);
        });
    for (auto& th : pool) th.join();

    out << "n     trees  well  good  labeled  fallback  failures\n";
    std::vector<std::string> failures;
    std::size_t i = 0;
    for (int n = 4; n <= a.max_n; ++n) {
        ItemResult sum;
        int trees = 0;
        for (; i < items.size() && items[i].n == n; ++i, ++trees) {
            const auto& r = results[i];
            sum.well += r.well;
            sum.good += r.good;
            sum.labeled += r.labeled;
            sum.fallbacks += r.fallbacks;
            failures.insert(failures.end(), r.failures.begin(), r.failures.end());
            sum.failures.insert(sum.failures.end(), r.failures.begin(), r.failures.end());
        }
        char line[128];
        std::snprintf(line, sizeof line, "%-5d %6d %5d %5d %8d %9d %9zu\n", n, trees, sum.well, sum.good, sum.labeled,
                      sum.fallbacks, sum.failures.size());
        out << line;
    }
    for (const auto& f : failures) out << "FAIL " << f << '\n';
    return failures.empty() ? kOk : kFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Packings of trees into their powers"};
    app.require_subcommand(1);

    PackArgs pack;
    auto* pack_cmd = app.add_subcommand("pack", "construct and certify a placement and a labeled packing");
    pack_cmd->add_option("--power", pack.power, "4 (paths), 5 or 6")->required()->check(CLI::IsMember({4, 5, 6}));
    pack_cmd->add_option("--input", pack.input, "edge-list tree file")->required();
    pack_cmd->add_option("--vertex", pack.vertex, "special vertex x (1-based)");
    pack_cmd->add_option("--format", pack.format)->check(CLI::IsMember({"json", "text"}));

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "check a permutation against a tree");
    verify_cmd->add_option("--power", verify.power)->required()->check(CLI::Range(1, 1000));
    verify_cmd->add_option("--input", verify.input)->required();
    verify_cmd->add_option("--sigma", verify.sigma, "cycle notation, 1-based")->required();
    verify_cmd->add_option("--vertex", verify.vertex);
    verify_cmd->add_option("--labels", verify.labels, "JSON integer array");

    OracleArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search on small trees");
    oracle_cmd->add_option("--input", oracle.input)->required();
    oracle_cmd->add_option("--power", oracle.power)->required()->check(CLI::Range(1, 1000));
    oracle_cmd->add_flag("--count-labels", oracle.count_labels, "maximum label count instead of placements");
    oracle_cmd->add_option("--limit", oracle.limit, "placements to print")->check(CLI::PositiveNumber);

    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "random labeled tree");
    gen_cmd->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed)->required();

    BatchArgs batch;
    auto* batch_cmd = app.add_subcommand("batch", "run the construction over a corpus");
    batch_cmd->add_option("--max-n", batch.max_n)->required();
    batch_cmd->add_option("--samples-per-size", batch.samples)->check(CLI::NonNegativeNumber);
    batch_cmd->add_flag("--fallback-oracle", batch.fallback);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*pack_cmd) return run_pack(pack, out);
        if (*verify_cmd) return run_verify(verify, out);
        if (*oracle_cmd) return run_oracle(oracle, out);
        if (*gen_cmd) {
            out << format_tree(random_tree(gen_n, gen_seed));
            return kOk;
        }
        if (*batch_cmd) return run_batch(batch, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::ParseError:
            case ErrorCode::NotATree:
            case ErrorCode::IdOutOfRange:
            case ErrorCode::DuplicateId:
            case ErrorCode::SizeMismatch:
            case ErrorCode::SizeTooLarge:
            case ErrorCode::InvalidArgument:
                return kUsage;
            default:
                return kFailed;
        }
    }
    return kUsage;
}

}  // namespace treepack
