#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace polyprod {

// Acts on the right: (a * b)[i] == b[a[i]], i.e. apply a first.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int degree);
    explicit Permutation(std::vector<int> images);
    static auto from_cycles(int degree, const std::vector<std::vector<int>>& cycles) -> Permutation;

    auto degree() const -> int { return static_cast<int>(images_.size()); }
    auto operator[](int i) const -> int { return images_[i]; }
    auto images() const -> const std::vector<int>& { return images_; }
    auto is_identity() const -> bool;
    auto inverse() const -> Permutation;
    auto order() const -> std::uint64_t;
    auto pow(long long e) const -> Permutation;
    auto first_moved() const -> int;

    friend auto operator*(const Permutation& a, const Permutation& b) -> Permutation;
    friend auto operator==(const Permutation&, const Permutation&) -> bool = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

struct PermutationHash {
    auto operator()(const Permutation& p) const -> std::size_t;
};

class PermGroup {
public:
    // A nonzero known_order lets the stabiliser chain stop as soon as it
    // accounts for that many elements; it must be the true order.
    PermGroup(int degree, std::vector<Permutation> generators, std::uint64_t known_order = 0);

    auto degree() const -> int { return degree_; }
    auto generators() const -> const std::vector<Permutation>& { return generators_; }

    auto order() const -> std::uint64_t;
    // Throws DegreeMismatch.
    auto contains(const Permutation& x) const -> bool;
    auto orbits() const -> std::vector<std::vector<int>>;
    auto orbit(int point) const -> std::vector<int>;
    auto stabilizer(int point) const -> PermGroup;
    auto base() const -> std::vector<int>;
    auto strong_generators() const -> std::vector<Permutation>;
    auto is_abelian() const -> bool;

    struct Enumeration {
        std::vector<Permutation> elements; // breadth-first by word length
        bool complete = false;
    };
    auto elements(std::size_t budget) const -> Enumeration;

    struct Chain;

private:
    auto chain() const -> const Chain&;

    int degree_;
    std::vector<Permutation> generators_;
    std::uint64_t known_order_ = 0;
    std::shared_ptr<Chain> chain_;
};

// Throws NotASubgroup when sub is not contained in g.
auto is_normal(const PermGroup& g, const PermGroup& sub) -> bool;
auto is_subgroup(const PermGroup& g, const PermGroup& sub) -> bool;

// Kernel of the homomorphism sending g.generators()[i] to images[i].
auto kernel_of_action(const PermGroup& g, const std::vector<Permutation>& images) -> PermGroup;

// A subgroup of order target_order meeting k trivially, if one exists.
// Throws SearchBudgetExceeded when g has more than budget elements.
auto find_complement(const PermGroup& g, const PermGroup& k, std::uint64_t target_order,
    std::size_t budget = 1'000'000) -> std::optional<PermGroup>;

// Order of the subgroup generated by gens, or nullopt once it exceeds cap.
auto closure_order(int degree, const std::vector<Permutation>& gens, std::size_t cap) -> std::optional<std::size_t>;

} // namespace polyprod
