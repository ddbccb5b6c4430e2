#include <polyprod/catalog.hpp>
#include <polyprod/error.hpp>
#include <polyprod/products.hpp>

namespace polyprod {

namespace {

auto require(bool ok, const std::string& what) -> void
{
    if (! ok)
        throw Error(ErrorCode::ParameterOutOfRange, what);
}

} // namespace

auto point() -> Polytope
{
    static const Polytope p = Polytope::trusted(build_poset({-1, 0}, {{1, 0}}));
    return p;
}

auto edge() -> Polytope
{
    return simplex(1);
}

// min, vertices 1..p, edges p+1..2p, max. Edge i joins vertices i and i+1 (mod p).
auto gon(int p) -> Polytope
{
    require(p >= 2, "gon needs p >= 2");
    std::vector<int> ranks{-1};
    std::vector<Cover> covers;
    for (int i = 0; i < p; ++i) {
        ranks.push_back(0);
        covers.emplace_back(1 + i, 0);
    }
    for (int i = 0; i < p; ++i) {
        ranks.push_back(1);
        covers.emplace_back(1 + p + i, 1 + i);
        covers.emplace_back(1 + p + i, 1 + (i + 1) % p);
    }
    ranks.push_back(2);
    for (int i = 0; i < p; ++i)
        covers.emplace_back(2 * p + 1, 1 + p + i);
    return Polytope::trusted(build_poset(std::move(ranks), std::move(covers)));
}

auto simplex(int n) -> Polytope
{
    require(n >= 0, "simplex needs n >= 0");
    return power(ProductKind::Join, point(), n + 1);
}

auto cube(int n) -> Polytope
{
    require(n >= 1, "cube needs n >= 1");
    return power(ProductKind::Cartesian, edge(), n);
}

auto cross(int n) -> Polytope
{
    require(n >= 1, "cross needs n >= 1");
    return power(ProductKind::DirectSum, edge(), n);
}

auto torus(int p, int d) -> Polytope
{
    require(p >= 2, "torus needs p >= 2");
    require(d >= 2, "torus needs d >= 2");
    return power(ProductKind::Topological, gon(p), d);
}

auto make(const CatalogSpec& spec) -> Polytope
{
    switch (spec.kind) {
    case CatalogKind::Point: return point();
    case CatalogKind::Edge: return edge();
    case CatalogKind::Gon: return gon(spec.a);
    case CatalogKind::Simplex: return simplex(spec.a);
    case CatalogKind::Cube: return cube(spec.a);
    case CatalogKind::Cross: return cross(spec.a);
    case CatalogKind::Torus: return torus(spec.a, spec.b);
    }
    throw Error(ErrorCode::ParameterOutOfRange, "unknown catalog kind");
}

auto catalog_name(const CatalogSpec& spec) -> std::string
{
    switch (spec.kind) {
    case CatalogKind::Point: return "point";
    case CatalogKind::Edge: return "edge";
    case CatalogKind::Gon: return "gon(" + std::to_string(spec.a) + ")";
    case CatalogKind::Simplex: return "simplex(" + std::to_string(spec.a) + ")";
    case CatalogKind::Cube: return "cube(" + std::to_string(spec.a) + ")";
    case CatalogKind::Cross: return "cross(" + std::to_string(spec.a) + ")";
    case CatalogKind::Torus: return "torus(" + std::to_string(spec.a) + "," + std::to_string(spec.b) + ")";
    }
    return "?";
}

} // namespace polyprod
