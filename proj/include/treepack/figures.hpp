#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treepack/permutation.hpp"
#include "treepack/tree.hpp"

namespace treepack {

enum class PlacementKind { Well, Good };
std::string_view to_string(PlacementKind kind) noexcept;

// One family of the figure catalogue, as parsed from the data file.
struct FigureFamily {
    struct Range {
        std::string prefix;
        std::string lo, hi;  // integer literal or the parameter name
    };
    struct Selector {
        enum class Type { Always, Equals, Odd, Even } type = Type::Always;
        int value = 0;
    };
    struct SigmaRule {
        std::optional<PlacementKind> kind;  // absent: shared by both kinds
        Selector when;
        std::vector<std::vector<std::string>> cycles;
        std::optional<Range> pairs;
    };
    struct ClaimRule {
        PlacementKind kind = PlacementKind::Well;
        Selector when;
        bool every_vertex = false;
        std::vector<std::string> roles;
    };

    std::string name;
    std::optional<std::string> parameter;
    int parameter_min = 0;
    std::vector<std::string> edge_tokens;
    std::vector<SigmaRule> sigma_rules;
    std::vector<ClaimRule> claims;
    // Labelings of the shape on these vertex names that accept every stored
    // placement; anything above 1 means the names are not pinned down.
    int labelings = 0;

    bool parameterized() const noexcept { return parameter.has_value(); }
};

// A family at a concrete parameter value: a tree on named vertices.
struct FigureInstance {
    std::string family;
    std::optional<int> parameter;
    Tree tree = Tree::single_vertex();
    std::vector<std::string> names;  // names[v] for vertex v
    std::optional<Permutation> placement_well;
    std::optional<Permutation> placement_good;
    std::vector<Vertex> claimed_well;
    std::vector<Vertex> claimed_good;

    Vertex vertex(std::string_view name) const;  // throws InvalidArgument if unknown
    const std::optional<Permutation>& placement(PlacementKind kind) const;
    const std::vector<Vertex>& claimed(PlacementKind kind) const;
};

class FigureCatalogue {
public:
    static FigureCatalogue parse(std::string_view text);
    static FigureCatalogue load(const std::string& path);
    // The catalogue compiled into the library.
    static const FigureCatalogue& builtin();

    const std::vector<FigureFamily>& families() const noexcept { return families_; }
    const FigureFamily& family(std::string_view name) const;

private:
    std::vector<FigureFamily> families_;
};

FigureInstance instantiate(const FigureFamily& family, std::optional<int> parameter = std::nullopt);

struct FigureMatch {
    std::string family;
    std::optional<int> parameter;
    std::vector<std::pair<std::string, Vertex>> roles;  // family name -> tree vertex
    Permutation sigma;

    Vertex role(std::string_view name) const;
};

// Tries to read t, rooted at x, as a member of `family` with x in a claimed
// role. The instantiated placement is verified before it is returned; a
// failed check raises ConstructionBug.
std::optional<FigureMatch> match_family(const FigureFamily& family, const Tree& t, Vertex x, PlacementKind kind);
std::optional<FigureMatch> match_figure(const Tree& t, Vertex x, PlacementKind kind,
                                        const FigureCatalogue& catalogue = FigureCatalogue::builtin());

}  // namespace treepack
