#pragma once

#include <polyprod/polytope.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace polyprod {

enum class ProductKind { Join, Cartesian, DirectSum, Topological };

inline constexpr ProductKind all_product_kinds[] = {
    ProductKind::Join, ProductKind::Cartesian, ProductKind::DirectSum, ProductKind::Topological};

// "join", "cart", "dsum", "topo"
auto kind_name(ProductKind k) -> std::string_view;
auto parse_kind(std::string_view s) -> std::optional<ProductKind>;

// End faces removed before the product becomes a cardinal product.
auto stripped_ends(ProductKind k) -> Ends;

// Number of rank steps a factor of the given rank contributes to a product flag:
// rank+1 for joins, rank for cartesian and direct sums, rank-1 for topological.
auto flag_steps(ProductKind k, int rank) -> int;

// A product together with the component tuple of each of its faces.
class ProductStructure {
public:
    ProductStructure(ProductKind kind, std::vector<Polytope> factors, std::vector<std::vector<FaceId>> coords);

    auto kind() const -> ProductKind { return kind_; }
    auto factors() const -> const std::vector<Polytope>& { return factors_; }
    auto factor_count() const -> int { return static_cast<int>(factors_.size()); }
    auto coords(FaceId f) const -> const std::vector<FaceId>& { return coords_[f]; }
    auto all_coords() const -> const std::vector<std::vector<FaceId>>& { return coords_; }
    auto face_of(const std::vector<FaceId>& tuple) const -> std::optional<FaceId>;

private:
    ProductKind kind_;
    std::vector<Polytope> factors_;
    std::vector<std::vector<FaceId>> coords_;
    std::vector<std::int64_t> radix_;
    std::vector<FaceId> by_code_;
};

struct Product {
    Polytope polytope;
    ProductStructure structure;
};

// Product of any number of factors; face ids follow the lexicographic order
// of component tuples.
auto product_many(ProductKind kind, const std::vector<Polytope>& factors) -> Product;

auto product(ProductKind kind, const Polytope& p, const Polytope& q) -> Polytope;

// The direct sum through duality: (p* x q*)*.
auto direct_sum_via_dual(const Polytope& p, const Polytope& q) -> Polytope;

auto power(ProductKind kind, const Polytope& p, int k) -> Polytope;

auto pyr(const Polytope& p) -> Polytope;
auto pri(const Polytope& p) -> Polytope;
auto bipyr(const Polytope& p) -> Polytope;

} // namespace polyprod
