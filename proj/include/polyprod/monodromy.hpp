#pragma once

#include <polyprod/factorization.hpp>
#include <polyprod/permgroup.hpp>
#include <polyprod/products.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace polyprod {

// r_0..r_{n-1} as permutations of flag indices in enumerate_flags order.
struct MonodromyGens {
    std::vector<Permutation> r;
    int degree = 0;
};

struct Monodromy {
    MonodromyGens gens;
    PermGroup group;
};

auto monodromy_generators(const Polytope& p) -> MonodromyGens;
auto monodromy_group(const Polytope& p) -> Monodromy;

// The labelled wreath product of the factor monodromy groups over the
// adjacency sequences of a product, acting on the product's flags.
class WreathSpace {
public:
    // Throws FlagNotOfProduct when the flags of p do not decompose over s.
    WreathSpace(const Polytope& p, ProductStructure s);

    auto polytope() const -> const Polytope& { return p_; }
    auto structure() const -> const ProductStructure& { return *s_; }
    // Length of every adjacency sequence; the top group is S_n.
    auto n() const -> int { return n_; }
    auto sequences() const -> const std::vector<std::vector<int>>& { return sequences_; }
    // Throws InvalidInput for a sequence of the wrong shape.
    auto sequence_index(const std::vector<int>& a) const -> int;
    auto factor_flag_count(int j) const -> int;

    // Flag index of the product as (factor flag indices, sequence index).
    struct Coordinates {
        std::vector<int> factor_flags;
        int sequence = 0;
    };
    auto coordinates(int flag) const -> const Coordinates& { return coords_[flag]; }
    auto flag_of(const Coordinates& c) const -> int;

private:
    Polytope p_;
    std::shared_ptr<const ProductStructure> s_;
    int n_ = 0;
    std::vector<std::vector<int>> sequences_;
    std::map<std::vector<int>, int> sequence_ids_;
    std::vector<Coordinates> coords_;
    std::map<std::pair<int, std::vector<int>>, int> flag_ids_;
};

// labels[b][j] is the factor-j component of w_b, a permutation of the flags of
// factor j; top acts on sequence positions.
struct WreathElement {
    std::vector<std::vector<Permutation>> labels;
    Permutation top;
};

auto wreath_identity(const WreathSpace& w) -> WreathElement;
// Apply a, then b.
auto wreath_multiply(const WreathSpace& w, const WreathElement& a, const WreathElement& b) -> WreathElement;
// The flag reached from flag by the element.
auto wreath_act(const WreathSpace& w, int flag, const WreathElement& e) -> int;
auto wreath_permutation(const WreathSpace& w, const WreathElement& e) -> Permutation;

struct WreathEmbedding {
    WreathSpace space;
    std::vector<WreathElement> generators; // w_k, acting as r_k
};

// Builds w_0..w_{rank-1} and checks that each acts as r_k on every flag.
// Throws EmbeddingMismatch otherwise.
auto wreath_embed(const Polytope& p, const ProductStructure& s) -> WreathEmbedding;
auto wreath_embed(const Polytope& p, const FactorizationResult& f) -> WreathEmbedding;

enum class SplitVerdict { Split, NonSplit, Unknown };

auto split_verdict_name(SplitVerdict v) -> std::string;

struct SplitResult {
    std::string subject; // "K over H"
    std::uint64_t target = 0;
    SplitVerdict verdict = SplitVerdict::Unknown;
    std::vector<Permutation> witness; // generators of a complement
};

struct StructureCheck {
    std::string name;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;

    auto passed() const -> bool { return expected == actual; }
};

struct ExtensionReport {
    std::uint64_t monodromy_order = 0;
    int n = 0;
    std::uint64_t image_order = 0; // of pi, expected n!
    std::uint64_t kernel_order = 0;
    std::vector<std::pair<std::string, std::uint64_t>> subgroups;
    std::vector<StructureCheck> checks;
    std::vector<SplitResult> splits;

    auto all_passed() const -> bool;
};

auto factorial(int n) -> std::uint64_t;

// pi sends each w_k to its top permutation; K is its kernel on M.
struct Projection {
    Monodromy monodromy;
    WreathEmbedding embedding;
    PermGroup image;
    PermGroup kernel;
    ExtensionReport report;
};

auto projection(const Polytope& p, const ProductStructure& s) -> Projection;

// The projection report plus a search for a complement to K in M within budget.
auto projection_report(const Polytope& p, const FactorizationResult& f, std::size_t budget = 200'000) -> ExtensionReport;

// The prism over a p-gon, as edge x gon(p). Checks order(s0 s1) = 4m,
// H = <b^2, c^2, d^2> abelian of order m^3 and normal in K = <s0, b, c>,
// |K/H| = 8 with squares of coset representatives in H, and decides whether K
// splits over H and M over K.
auto prism_structure(int p, std::size_t budget = 1'000'000) -> ExtensionReport;

// The pyramid over a p-gon, as point join gon(p). Checks |K| = m^4 with K
// abelian, order(s_i s_{i+1}) against lcm(3, p_{i-1}, p_i) and decides
// whether M splits over K.
auto pyramid_structure(int p, std::size_t budget = 1'000'000) -> ExtensionReport;

// Topological product of polygons. Checks |M| = (2 lcm)^r r!, that the r
// coordinate dihedral subgroups have order 2 lcm, commute pairwise and
// generate K. Throws ParameterOutOfRange for r < 2 or a parameter below 2.
auto topo_polygons_structure(const std::vector<int>& ps) -> ExtensionReport;

// Prism over a polytope Q: whether M surjects onto S_{rank Q + 1} and whether
// a complement to K is found within budget.
auto prism_over_structure(const Polytope& q, std::size_t budget) -> ExtensionReport;

} // namespace polyprod
