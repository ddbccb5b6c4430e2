#pragma once

#include <polyprod/face_poset.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace polyprod {

// One face per rank, index 0 holding the rank -1 face.
using Flag = std::vector<FaceId>;

// Flags in lexicographic order with the full adjacency table.
class FlagSet {
public:
    FlagSet(const FacePoset& poset, int rank);

    auto size() const -> int { return static_cast<int>(flags_.size()); }
    auto rank() const -> int { return rank_; }
    auto flag(int index) const -> const Flag& { return flags_[index]; }
    auto flags() const -> const std::vector<Flag>& { return flags_; }
    auto index_of(const Flag& f) const -> std::optional<int>;
    // Index of the i-adjacent flag, 0 <= i < rank.
    auto adjacent(int index, int i) const -> int { return adjacency_[static_cast<std::size_t>(index) * rank_ + i]; }

private:
    int rank_;
    std::vector<Flag> flags_;
    std::vector<int> adjacency_;
};

class Polytope {
public:
    // Validates; throws NotAPolytope with the first violation.
    static auto from_poset(FacePoset poset) -> Polytope;
    // For constructions that produce polytopes by theory; skips validation.
    static auto trusted(FacePoset poset) -> Polytope;
    // The rank -1 polytope: a single face. Only joins and factorization accept it.
    static auto empty() -> Polytope;

    auto poset() const -> const FacePoset&;
    auto rank() const -> int;
    auto size() const -> int;
    auto is_empty() const -> bool { return rank() == -1; }
    auto min_face() const -> FaceId;
    auto max_face() const -> FaceId;
    // Face counts for ranks 0..rank-1.
    auto f_vector() const -> std::vector<int>;
    auto flag_set() const -> const FlagSet&;
    auto flag_count() const -> int { return flag_set().size(); }

private:
    struct State;
    explicit Polytope(std::shared_ptr<State> s) : state_(std::move(s)) {}
    static auto make(FacePoset poset) -> Polytope;

    std::shared_ptr<State> state_;
};

enum class ViolationKind {
    NoMinimum,
    NoMaximum,
    ChainLengthMismatch,
    DiamondViolation,
    SectionDisconnected,
    RankGap,
};

auto violation_name(ViolationKind k) -> std::string;

struct Violation {
    ViolationKind kind;
    FaceId lower = -1;
    FaceId upper = -1;
};

struct ValidationReport {
    bool is_polytope = true;
    std::vector<Violation> violations;
};

auto validate_polytope(const FacePoset& poset) -> ValidationReport;

auto dual(const Polytope& p) -> Polytope;

// The closed interval g/f, ranks shifted so that f has rank -1.
auto section(const Polytope& p, FaceId f, FaceId g) -> Polytope;

auto strip(const Polytope& p, Ends ends) -> FacePoset;
// Also returns, for each face of the result, its id in p.
auto strip_with_map(const Polytope& p, Ends ends) -> std::pair<FacePoset, std::vector<FaceId>>;

// Rank- and cover-preserving bijection a -> b, if any.
auto is_isomorphic(const FacePoset& a, const FacePoset& b) -> std::optional<std::vector<FaceId>>;
auto is_isomorphic(const Polytope& a, const Polytope& b) -> std::optional<std::vector<FaceId>>;

// True when `map` is a rank- and cover-preserving bijection a -> b.
auto is_isomorphism(const FacePoset& a, const FacePoset& b, const std::vector<FaceId>& map) -> bool;

struct CanonicalForm {
    FacePoset poset;          // relabelled copy; equal for isomorphic inputs
    std::vector<FaceId> map;  // input face -> canonical face
    std::vector<int> code;    // flag-graph encoding, an isomorphism invariant
};

// Minimises the breadth-first flag-graph encoding over all base flags.
auto canonical_form(const Polytope& p) -> CanonicalForm;

// Colour refinement used as the invariant partition for isomorphism search.
// Colours are comparable across all posets passed in one call.
auto refine_colours(const std::vector<const FacePoset*>& posets) -> std::vector<std::vector<int>>;

} // namespace polyprod
