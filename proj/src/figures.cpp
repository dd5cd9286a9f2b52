#include "treepack/figures.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "treepack/verifier.hpp"

namespace treepack {

namespace detail {
extern const char* const kFigureCatalogue;
}

namespace {

using Family = FigureFamily;

[[noreturn]] void bad_data(int line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "figure catalogue line " + std::to_string(line) + ": " + what);
}

std::optional<int> to_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::vector<std::string> split_words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

Family::Range parse_range(const std::string& token, int line) {
    auto open = token.find('{');
    auto dots = token.find("..");
    auto close = token.find('}');
    if (open == std::string::npos || dots == std::string::npos || close != token.size() - 1 || dots < open)
        bad_data(line, "malformed range '" + token + "'");
    return {token.substr(0, open), token.substr(open + 1, dots - open - 1), token.substr(dots + 2, close - dots - 2)};
}

Family::Selector parse_selector(const Family& f, const std::string& token, int line) {
    auto eq = token.find('=');
    if (eq == std::string::npos || !f.parameter || token.substr(0, eq) != *f.parameter)
        bad_data(line, "selector '" + token + "' does not name the family parameter");
    std::string rhs = token.substr(eq + 1);
    if (rhs == "odd") return {Family::Selector::Type::Odd, 0};
    if (rhs == "even") return {Family::Selector::Type::Even, 0};
    auto v = to_int(rhs);
    if (!v) bad_data(line, "bad selector value '" + rhs + "'");
    return {Family::Selector::Type::Equals, *v};
}

bool selects(const Family::Selector& s, std::optional<int> k) {
    switch (s.type) {
        case Family::Selector::Type::Always: return true;
        case Family::Selector::Type::Equals: return k && *k == s.value;
        case Family::Selector::Type::Odd: return k && *k % 2 != 0;
        case Family::Selector::Type::Even: return k && *k % 2 == 0;
    }
    return false;
}

// Consumes optional "for KIND" and "when SEL" prefixes from words[pos...].
void parse_prefixes(const Family& f, const std::vector<std::string>& words, std::size_t& pos,
                    std::optional<PlacementKind>* kind, Family::Selector& when, int line) {
    while (pos + 1 < words.size()) {
        if (kind && words[pos] == "for") {
            if (words[pos + 1] == "well")
                *kind = PlacementKind::Well;
            else if (words[pos + 1] == "good")
                *kind = PlacementKind::Good;
            else
                bad_data(line, "unknown kind '" + words[pos + 1] + "'");
        } else if (words[pos] == "when") {
            when = parse_selector(f, words[pos + 1], line);
        } else {
            break;
        }
        pos += 2;
    }
}

Family::SigmaRule parse_sigma(const Family& f, std::string_view rest, int line) {
    Family::SigmaRule rule;
    auto first_paren = rest.find('(');
    if (first_paren == std::string_view::npos) bad_data(line, "sigma line without cycles");
    auto words = split_words(rest.substr(0, first_paren));
    std::size_t pos = 0;
    parse_prefixes(f, words, pos, &rule.kind, rule.when, line);
    if (pos != words.size()) bad_data(line, "unexpected '" + words[pos] + "' before cycles");

    std::size_t i = first_paren;
    while (i < rest.size()) {
        char c = rest[i];
        if (c == ' ' || c == '\t') {
            ++i;
        } else if (c == '(') {
            auto close = rest.find(')', i);
            if (close == std::string_view::npos) bad_data(line, "unterminated cycle");
            auto names = split_words(rest.substr(i + 1, close - i - 1));
            if (names.empty()) bad_data(line, "empty cycle");
            rule.cycles.push_back(std::move(names));
            i = close + 1;
        } else {
            auto tail = split_words(rest.substr(i));
            if (tail.size() != 2 || tail[0] != "pairs") bad_data(line, "expected 'pairs RANGE' after cycles");
            rule.pairs = parse_range(tail[1], line);
            break;
        }
    }
    return rule;
}

int resolve_bound(const std::string& bound, const Family& f, std::optional<int> k) {
    if (auto v = to_int(bound)) return *v;
    if (f.parameter && bound == *f.parameter && k) return *k;
    throw Error(ErrorCode::ParseError, "family " + f.name + ": cannot resolve bound '" + bound + "'");
}

std::vector<std::string> expand(const std::string& token, const Family& f, std::optional<int> k) {
    if (token.find('{') == std::string::npos) return {token};
    auto r = parse_range(token, 0);
    std::vector<std::string> out;
    for (int i = resolve_bound(r.lo, f, k), hi = resolve_bound(r.hi, f, k); i <= hi; ++i)
        out.push_back(r.prefix + std::to_string(i));
    return out;
}

}  // namespace

std::string_view to_string(PlacementKind kind) noexcept { return kind == PlacementKind::Well ? "well" : "good"; }

Vertex FigureInstance::vertex(std::string_view name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::InvalidArgument, "family " + family + " has no vertex " + std::string(name));
    return static_cast<Vertex>(it - names.begin());
}

const std::optional<Permutation>& FigureInstance::placement(PlacementKind kind) const {
    return kind == PlacementKind::Well ? placement_well : placement_good;
}

const std::vector<Vertex>& FigureInstance::claimed(PlacementKind kind) const {
    return kind == PlacementKind::Well ? claimed_well : claimed_good;
}

Vertex FigureMatch::role(std::string_view name) const {
    for (const auto& [n, v] : roles)
        if (n == name) return v;
    throw Error(ErrorCode::InvalidArgument, "match of " + family + " has no role " + std::string(name));
}

FigureCatalogue FigureCatalogue::parse(std::string_view text) {
    FigureCatalogue cat;
    std::optional<Family> current;
    bool saw_format = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto words = split_words(raw);
        if (words.empty() || words[0][0] == '#') continue;
        const std::string& key = words[0];
        if (key == "format") {
            if (words.size() != 2 || words[1] != "1") bad_data(line, "unsupported format");
            saw_format = true;
            continue;
        }
        if (!saw_format) bad_data(line, "missing 'format' header");
        if (key == "family") {
            if (current) bad_data(line, "family started before 'end'");
            if (words.size() != 2) bad_data(line, "family needs a name");
            current.emplace();
            current->name = words[1];
            continue;
        }
        if (!current) bad_data(line, "'" + key + "' outside a family");
        Family& f = *current;
        if (key == "end") {
            if (f.edge_tokens.empty()) bad_data(line, "family " + f.name + " has no edges");
            cat.families_.push_back(std::move(f));
            current.reset();
        } else if (key == "param") {
            if (words.size() != 4 || words[2] != "from" || !to_int(words[3])) bad_data(line, "expected 'param K from MIN'");
            f.parameter = words[1];
            f.parameter_min = *to_int(words[3]);
        } else if (key == "edges") {
            f.edge_tokens.insert(f.edge_tokens.end(), words.begin() + 1, words.end());
        } else if (key == "sigma") {
            f.sigma_rules.push_back(parse_sigma(f, std::string_view(raw).substr(raw.find("sigma") + 5), line));
        } else if (key == "well" || key == "good") {
            Family::ClaimRule claim;
            claim.kind = key == "well" ? PlacementKind::Well : PlacementKind::Good;
            std::size_t pos = 1;
            parse_prefixes(f, words, pos, nullptr, claim.when, line);
            if (pos == words.size()) bad_data(line, "claim without roles");
            if (words[pos] == "*")
                claim.every_vertex = true;
            else
                claim.roles.assign(words.begin() + static_cast<std::ptrdiff_t>(pos), words.end());
            f.claims.push_back(std::move(claim));
        } else if (key == "labelings") {
            std::optional<int> count = words.size() == 2 ? to_int(words[1]) : std::nullopt;
            if (!count || *count < 1) bad_data(line, "labelings needs a positive count");
            f.labelings = *count;
        } else {
            bad_data(line, "unknown keyword '" + key + "'");
        }
    }
    if (current) bad_data(line, "family " + current->name + " lacks 'end'");
    // Instantiate every family once so data errors surface at load time.
    for (const auto& f : cat.families_) instantiate(f, f.parameterized() ? std::optional<int>(f.parameter_min) : std::nullopt);
    return cat;
}

FigureCatalogue FigureCatalogue::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open figure catalogue " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const FigureCatalogue& FigureCatalogue::builtin() {
    static const FigureCatalogue cat = parse(detail::kFigureCatalogue);
    return cat;
}

const FigureFamily& FigureCatalogue::family(std::string_view name) const {
    for (const auto& f : families_)
        if (f.name == name) return f;
    throw Error(ErrorCode::InvalidArgument, "unknown figure family " + std::string(name));
}

FigureInstance instantiate(const FigureFamily& f, std::optional<int> k) {
    if (f.parameterized() && (!k || *k < f.parameter_min))
        throw Error(ErrorCode::InvalidArgument, "family " + f.name + " needs parameter >= " + std::to_string(f.parameter_min));
    if (!f.parameterized()) k.reset();

    FigureInstance inst;
    inst.family = f.name;
    inst.parameter = k;
    std::map<std::string, Vertex> ids;
    auto id_of = [&](const std::string& name) {
        auto [it, fresh] = ids.try_emplace(name, static_cast<Vertex>(inst.names.size()));
        if (fresh) inst.names.push_back(name);
        return it->second;
    };
    std::vector<Edge> edges;
    for (const auto& token : f.edge_tokens) {
        auto dash = token.find('-');
        if (dash == std::string::npos) throw Error(ErrorCode::ParseError, "family " + f.name + ": bad edge " + token);
        auto lhs = expand(token.substr(0, dash), f, k);
        auto rhs = expand(token.substr(dash + 1), f, k);
        if (lhs.size() != 1 && rhs.size() != 1)
            throw Error(ErrorCode::ParseError, "family " + f.name + ": edge " + token + " ranges on both sides");
        for (const auto& a : lhs)
            for (const auto& b : rhs) edges.emplace_back(id_of(a), id_of(b));
    }
    inst.tree = Tree::from_edges(static_cast<int>(inst.names.size()), edges);

    auto lookup = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it == ids.end()) throw Error(ErrorCode::ParseError, "family " + f.name + ": unknown vertex " + name);
        return it->second;
    };
    for (PlacementKind kind : {PlacementKind::Well, PlacementKind::Good}) {
        std::vector<Vertex> claimed;
        for (const auto& c : f.claims) {
            if (c.kind != kind || !selects(c.when, k)) continue;
            if (c.every_vertex)
                for (Vertex v = 0; v < inst.tree.size(); ++v) claimed.push_back(v);
            for (const auto& r : c.roles) claimed.push_back(lookup(r));
        }
        std::sort(claimed.begin(), claimed.end());
        claimed.erase(std::unique(claimed.begin(), claimed.end()), claimed.end());

        std::optional<Permutation> sigma;
        for (const auto& rule : f.sigma_rules) {
            if ((rule.kind && *rule.kind != kind) || !selects(rule.when, k)) continue;
            std::vector<Cycle> cycles;
            for (const auto& c : rule.cycles) {
                Cycle cycle;
                for (const auto& name : c) cycle.push_back(lookup(name));
                cycles.push_back(std::move(cycle));
            }
            if (rule.pairs) {
                auto names = expand(rule.pairs->prefix + "{" + rule.pairs->lo + ".." + rule.pairs->hi + "}", f, k);
                if (names.size() % 2 != 0)
                    throw Error(ErrorCode::ParseError, "family " + f.name + ": odd number of paired vertices");
                for (std::size_t i = 0; i < names.size(); i += 2) cycles.push_back({lookup(names[i]), lookup(names[i + 1])});
            }
            sigma = Permutation::from_cycles(inst.tree.size(), cycles);
            break;
        }
        if (!claimed.empty() && !sigma)
            throw Error(ErrorCode::ParseError, "family " + f.name + " claims " + std::string(to_string(kind)) +
                                                   " roles without a matching sigma");
        if (kind == PlacementKind::Well) {
            inst.claimed_well = std::move(claimed);
            inst.placement_well = std::move(sigma);
        } else {
            inst.claimed_good = std::move(claimed);
            inst.placement_good = std::move(sigma);
        }
    }
    return inst;
}

std::optional<FigureMatch> match_family(const FigureFamily& f, const Tree& t, Vertex x, PlacementKind kind) {
    std::optional<int> k;
    if (f.parameterized()) {
        int s0 = instantiate(f, f.parameter_min).tree.size();
        int s1 = instantiate(f, f.parameter_min + 1).tree.size();
        int grow = s1 - s0;
        if (grow <= 0 || t.size() < s0 || (t.size() - s0) % grow != 0) return std::nullopt;
        k = f.parameter_min + (t.size() - s0) / grow;
    }
    FigureInstance inst = instantiate(f, k);
    if (inst.tree.size() != t.size() || !inst.placement(kind)) return std::nullopt;
    const Permutation& sigma = *inst.placement(kind);
    for (Vertex role : inst.claimed(kind)) {
        auto iso = rooted_isomorphism(inst.tree, role, t, x);
        if (!iso) continue;
        std::vector<Vertex> image(static_cast<std::size_t>(t.size()));
        for (Vertex v = 0; v < inst.tree.size(); ++v)
            image[static_cast<std::size_t>((*iso)[static_cast<std::size_t>(v)])] = (*iso)[static_cast<std::size_t>(sigma(v))];
        Permutation mapped = Permutation::from_image(std::move(image));
        auto cert = kind == PlacementKind::Well ? CertificateKind::well_tree(x) : CertificateKind::good_tree(x);
        auto report = verify_certificate(t, mapped, cert);
        if (!report.overall())
            throw Error(ErrorCode::ConstructionBug, "figure family " + f.name + " (" + inst.names[static_cast<std::size_t>(role)] +
                                                        ") fails: " + report.summary());
        FigureMatch match{f.name, k, {}, std::move(mapped)};
        for (Vertex v = 0; v < inst.tree.size(); ++v)
            match.roles.emplace_back(inst.names[static_cast<std::size_t>(v)], (*iso)[static_cast<std::size_t>(v)]);
        return match;
    }
    return std::nullopt;
}

std::optional<FigureMatch> match_figure(const Tree& t, Vertex x, PlacementKind kind, const FigureCatalogue& catalogue) {
    for (const auto& f : catalogue.families())
        if (auto m = match_family(f, t, x, kind)) return m;
    return std::nullopt;
}

}  // namespace treepack
