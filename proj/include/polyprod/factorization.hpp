#pragma once

#include <polyprod/products.hpp>

#include <utility>
#include <vector>

namespace polyprod {

// Prime cardinal factors (ranks shifted to start at 0) and, for each face of
// the input, its tuple of factor face ids.
struct CardinalFactorization {
    std::vector<FacePoset> factors;
    std::vector<std::vector<FaceId>> coords;
};

// Throws Disconnected. A one-element poset has no factors.
auto factor_cardinal(const FacePoset& poset) -> CardinalFactorization;

// Exhaustive search over atom bipartitions; independent of factor_cardinal.
// Throws TooLargeForOracle beyond 14 atoms, Disconnected.
auto oracle_factor(const FacePoset& poset) -> CardinalFactorization;

struct FactorizationResult {
    ProductKind kind;
    // Distinct primes in canonical order with their multiplicities.
    std::vector<std::pair<Polytope, int>> factors;
    // For each face of the input, one face id per factor copy, copies in the
    // order of expanded(); these are the coordinates used by product_many.
    std::vector<std::vector<FaceId>> coordinatization;

    auto expanded() const -> std::vector<Polytope>;
    auto factor_count() const -> int;
};

// Throws RebuildMismatch if the rebuilt product is not the input, and
// EmptyOperand for the empty polytope under cart, dsum and topo.
auto factor(const Polytope& p, ProductKind kind) -> FactorizationResult;

auto is_prime(const Polytope& p, ProductKind kind) -> bool;

// The input viewed as a product of expanded() through its coordinatization.
auto product_structure(const FactorizationResult& r) -> ProductStructure;

} // namespace polyprod
