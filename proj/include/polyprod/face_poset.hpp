#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace polyprod {

using FaceId = int;
using Cover = std::pair<FaceId, FaceId>; // (upper, lower)

enum class Ends { None, Min, Max, Both };

// A finite ranked poset stored as its Hasse diagram. Faces are 0..size()-1.
class FacePoset {
public:
    FacePoset() = default;

    auto size() const -> int { return static_cast<int>(ranks_.size()); }
    auto rank(FaceId f) const -> int { return ranks_[f]; }
    auto ranks() const -> const std::vector<int>& { return ranks_; }

    // Faces covering f, and faces covered by f; both sorted by id.
    auto upper_covers(FaceId f) const -> const std::vector<FaceId>& { return up_[f]; }
    auto lower_covers(FaceId f) const -> const std::vector<FaceId>& { return down_[f]; }

    // All covers sorted lexicographically.
    auto covers() const -> std::vector<Cover>;
    auto cover_count() const -> std::size_t;

    auto min_rank() const -> int;
    auto max_rank() const -> int;
    auto faces_of_rank(int r) const -> std::vector<FaceId>;
    auto minimal_faces() const -> std::vector<FaceId>;
    auto maximal_faces() const -> std::vector<FaceId>;

    // Weak connectivity of the Hasse diagram.
    auto is_connected() const -> bool;

    // Single query; use Reachability for batches.
    auto leq(FaceId a, FaceId b) const -> bool;

    friend auto build_poset(std::vector<int> ranks, std::vector<Cover> covers) -> FacePoset;

private:
    std::vector<int> ranks_;
    std::vector<std::vector<FaceId>> up_;
    std::vector<std::vector<FaceId>> down_;
};

auto build_poset(std::vector<int> ranks, std::vector<Cover> covers) -> FacePoset;

// Order reversal; rank becomes min_rank + max_rank - rank. Ids are kept.
auto dual(const FacePoset& p) -> FacePoset;

// Subposet on `keep` (renumbered in the given order) with the covers among kept faces.
auto induced(const FacePoset& p, const std::vector<FaceId>& keep) -> FacePoset;

auto shift_ranks(const FacePoset& p, int delta) -> FacePoset;

// Adds a new minimum below all minimal faces and/or a new maximum above all
// maximal faces. New faces get the next free ids, minimum first.
auto cap(const FacePoset& p, Ends ends) -> FacePoset;

// Cardinal product with componentwise order. Face ids follow the lexicographic
// order of component tuples; ranks add.
auto cardinal_product(const FacePoset& a, const FacePoset& b) -> FacePoset;

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : words_((n + 63) / 64, 0) {}

    auto set(int i) -> void { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    auto reset(int i) -> void { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    auto test(int i) const -> bool { return (words_[i >> 6] >> (i & 63)) & 1; }
    auto operator|=(const Bitset& o) -> Bitset&;
    auto operator&=(const Bitset& o) -> Bitset&;
    auto count() const -> int;
    auto subset_of(const Bitset& o) const -> bool;
    auto words() const -> const std::vector<std::uint64_t>& { return words_; }

    template <typename F>
    auto for_each(F&& f) const -> void
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    friend auto operator==(const Bitset&, const Bitset&) -> bool = default;

private:
    std::vector<std::uint64_t> words_;
};

// Down-sets and up-sets of every face, built once for a batch of order queries.
class Reachability {
public:
    explicit Reachability(const FacePoset& p);

    auto leq(FaceId a, FaceId b) const -> bool { return below_[b].test(a); }
    auto down_set(FaceId f) const -> const Bitset& { return below_[f]; }
    auto up_set(FaceId f) const -> const Bitset& { return above_[f]; }

private:
    std::vector<Bitset> below_;
    std::vector<Bitset> above_;
};

} // namespace polyprod
