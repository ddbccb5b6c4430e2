#include <polyprod/catalog.hpp>
#include <polyprod/error.hpp>
#include <polyprod/products.hpp>

#include <algorithm>
#include <numeric>

namespace polyprod {

auto kind_name(ProductKind k) -> std::string_view
{
    switch (k) {
    case ProductKind::Join: return "join";
    case ProductKind::Cartesian: return "cart";
    case ProductKind::DirectSum: return "dsum";
    case ProductKind::Topological: return "topo";
    }
    return "?";
}

auto parse_kind(std::string_view s) -> std::optional<ProductKind>
{
    for (auto k : all_product_kinds)
        if (kind_name(k) == s)
            return k;
    return std::nullopt;
}

auto stripped_ends(ProductKind k) -> Ends
{
    switch (k) {
    case ProductKind::Join: return Ends::None;
    case ProductKind::Cartesian: return Ends::Min;
    case ProductKind::DirectSum: return Ends::Max;
    case ProductKind::Topological: return Ends::Both;
    }
    return Ends::None;
}

auto flag_steps(ProductKind k, int rank) -> int
{
    switch (k) {
    case ProductKind::Join: return rank + 1;
    case ProductKind::Cartesian:
    case ProductKind::DirectSum: return rank;
    case ProductKind::Topological: return rank - 1;
    }
    return 0;
}

ProductStructure::ProductStructure(ProductKind kind, std::vector<Polytope> factors, std::vector<std::vector<FaceId>> coords)
    : kind_(kind), factors_(std::move(factors)), coords_(std::move(coords))
{
    std::int64_t span = 1;
    radix_.resize(factors_.size());
    for (std::size_t j = factors_.size(); j-- > 0;) {
        radix_[j] = span;
        span *= factors_[j].size();
    }
    by_code_.assign(span, -1);
    for (FaceId f = 0; f < static_cast<FaceId>(coords_.size()); ++f) {
        std::int64_t code = 0;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            code += coords_[f][j] * radix_[j];
        by_code_[code] = f;
    }
}

auto ProductStructure::face_of(const std::vector<FaceId>& tuple) const -> std::optional<FaceId>
{
    if (tuple.size() != factors_.size())
        return std::nullopt;
    std::int64_t code = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (tuple[j] < 0 || tuple[j] >= factors_[j].size())
            return std::nullopt;
        code += tuple[j] * radix_[j];
    }
    FaceId f = by_code_[code];
    if (f < 0)
        return std::nullopt;
    return f;
}

namespace {

// Rank of a tuple in the product, or nullopt when the tuple is not a face.
auto tuple_rank(ProductKind kind, const std::vector<Polytope>& fs, const std::vector<FaceId>& t) -> std::optional<int>
{
    const std::size_t r = fs.size();
    bool all_min = true, all_max = true, all_low = true, all_high = true;
    int sum = 0, sum_plus = 0, sum_n = 0;
    for (std::size_t j = 0; j < r; ++j) {
        int rk = fs[j].poset().rank(t[j]);
        int n = fs[j].rank();
        all_min = all_min && t[j] == fs[j].min_face();
        all_max = all_max && t[j] == fs[j].max_face();
        all_low = all_low && rk >= 0;
        all_high = all_high && rk < n;
        sum += rk;
        sum_plus += rk + 1;
        sum_n += n;
    }
    switch (kind) {
    case ProductKind::Join:
        return sum_plus - 1;
    case ProductKind::Cartesian:
        if (all_min)
            return -1;
        if (all_low)
            return sum;
        return std::nullopt;
    case ProductKind::DirectSum:
        if (all_max)
            return sum_n;
        if (all_high)
            return sum_plus - 1;
        return std::nullopt;
    case ProductKind::Topological:
        if (all_min)
            return -1;
        if (all_max)
            return sum_n - static_cast<int>(r) + 1;
        if (all_low && all_high)
            return sum;
        return std::nullopt;
    }
    return std::nullopt;
}

auto check_operands(ProductKind kind, const std::vector<Polytope>& factors) -> void
{
    for (const auto& f : factors) {
        if (kind != ProductKind::Join && f.is_empty())
            throw Error(ErrorCode::EmptyOperand, std::string(kind_name(kind)) + " does not accept the empty polytope");
        if (kind == ProductKind::Topological && f.rank() < 2)
            throw Error(ErrorCode::TopologicalRankTooLow, "operand of rank " + std::to_string(f.rank()));
    }
}

} // namespace

auto product_many(ProductKind kind, const std::vector<Polytope>& factors) -> Product
{
    check_operands(kind, factors);
    if (factors.empty()) {
        if (kind == ProductKind::Topological)
            throw Error(ErrorCode::InvalidInput, "topological product of no factors");
        Polytope unit = kind == ProductKind::Join ? Polytope::empty() : point();
        std::vector<std::vector<FaceId>> coords(unit.size());
        return {unit, ProductStructure(kind, {}, std::move(coords))};
    }

    const std::size_t r = factors.size();
    std::vector<std::vector<FaceId>> coords;
    std::vector<int> ranks;
    std::vector<FaceId> t(r, 0);
    while (true) {
        if (auto rk = tuple_rank(kind, factors, t)) {
            coords.push_back(t);
            ranks.push_back(*rk);
        }
        std::size_t j = r;
        while (j > 0) {
            --j;
            if (++t[j] < factors[j].size())
                break;
            t[j] = 0;
            if (j == 0) {
                j = r + 1;
                break;
            }
        }
        if (j == r + 1)
            break;
    }

    ProductStructure structure(kind, factors, coords);
    std::vector<Cover> covers;
    const int top = *std::max_element(ranks.begin(), ranks.end());
    FaceId min_face = -1, max_face = -1;
    for (FaceId f = 0; f < static_cast<FaceId>(coords.size()); ++f) {
        if (ranks[f] == -1)
            min_face = f;
        if (ranks[f] == top)
            max_face = f;
    }
    for (FaceId f = 0; f < static_cast<FaceId>(coords.size()); ++f) {
        auto tuple = coords[f];
        for (std::size_t j = 0; j < r; ++j) {
            FaceId keep = tuple[j];
            for (FaceId l : factors[j].poset().lower_covers(keep)) {
                tuple[j] = l;
                if (auto g = structure.face_of(tuple))
                    covers.emplace_back(f, *g);
            }
            tuple[j] = keep;
        }
    }
    // End faces added by the cartesian, direct-sum and topological rules.
    const bool extra_min = kind == ProductKind::Cartesian || kind == ProductKind::Topological;
    const bool extra_max = kind == ProductKind::DirectSum || kind == ProductKind::Topological;
    for (FaceId f = 0; f < static_cast<FaceId>(coords.size()); ++f) {
        if (extra_min && ranks[f] == 0)
            covers.emplace_back(f, min_face);
        if (extra_max && ranks[f] == top - 1)
            covers.emplace_back(max_face, f);
    }

    auto poset = build_poset(std::move(ranks), std::move(covers));
    return {Polytope::trusted(std::move(poset)), std::move(structure)};
}

auto product(ProductKind kind, const Polytope& p, const Polytope& q) -> Polytope
{
    return product_many(kind, {p, q}).polytope;
}

auto direct_sum_via_dual(const Polytope& p, const Polytope& q) -> Polytope
{
    check_operands(ProductKind::DirectSum, {p, q});
    return dual(product(ProductKind::Cartesian, dual(p), dual(q)));
}

auto power(ProductKind kind, const Polytope& p, int k) -> Polytope
{
    if (k < 1)
        throw Error(ErrorCode::ParameterOutOfRange, "power exponent must be at least 1");
    Polytope acc = p;
    for (int i = 1; i < k; ++i)
        acc = product(kind, acc, p);
    return acc;
}

auto pyr(const Polytope& p) -> Polytope
{
    return product(ProductKind::Join, point(), p);
}

auto pri(const Polytope& p) -> Polytope
{
    return product(ProductKind::Cartesian, edge(), p);
}

auto bipyr(const Polytope& p) -> Polytope
{
    return product(ProductKind::DirectSum, edge(), p);
}

} // namespace polyprod
