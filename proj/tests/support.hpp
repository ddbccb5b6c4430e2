#pragma once

#include <polyprod/catalog.hpp>
#include <polyprod/polytope.hpp>
#include <polyprod/products.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace test_support {

using namespace polyprod;

// Same poset with face ids shuffled.
inline auto relabel(const FacePoset& p, std::uint32_t seed) -> FacePoset
{
    std::vector<FaceId> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> ranks(p.size());
    for (FaceId f = 0; f < p.size(); ++f)
        ranks[perm[f]] = p.rank(f);
    std::vector<Cover> covers;
    for (auto [u, l] : p.covers())
        covers.emplace_back(perm[u], perm[l]);
    std::shuffle(covers.begin(), covers.end(), rng);
    return build_poset(ranks, covers);
}

struct Named {
    std::string name;
    Polytope p;
};

// Catalog polytopes of rank at most 4.
inline auto small_catalog() -> std::vector<Named>
{
    std::vector<Named> out{{"point", point()}, {"edge", edge()}};
    for (int p = 2; p <= 6; ++p)
        out.push_back({"gon(" + std::to_string(p) + ")", gon(p)});
    for (int n = 0; n <= 4; ++n)
        out.push_back({"simplex(" + std::to_string(n) + ")", simplex(n)});
    for (int n = 1; n <= 4; ++n)
        out.push_back({"cube(" + std::to_string(n) + ")", cube(n)});
    for (int n = 1; n <= 4; ++n)
        out.push_back({"cross(" + std::to_string(n) + ")", cross(n)});
    out.push_back({"torus(3,2)", torus(3, 2)});
    out.push_back({"torus(4,2)", torus(4, 2)});
    return out;
}

inline auto binomial(int n, int k) -> std::int64_t
{
    if (k < 0 || k > n)
        return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline auto factorial(int n) -> std::int64_t
{
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// Flag count by brute-force chain walking, independent of FlagSet.
inline auto count_chains(const FacePoset& p, FaceId from) -> std::int64_t
{
    if (p.upper_covers(from).empty())
        return 1;
    std::int64_t c = 0;
    for (FaceId g : p.upper_covers(from))
        c += count_chains(p, g);
    return c;
}

// Totally ordered poset with n elements, ranks 0..n-1.
inline auto chain(int n) -> FacePoset
{
    std::vector<int> ranks(n);
    std::vector<Cover> covers;
    for (int i = 0; i < n; ++i) {
        ranks[i] = i;
        if (i > 0)
            covers.emplace_back(i, i - 1);
    }
    return build_poset(ranks, covers);
}

// Multiset equality up to isomorphism.
inline auto same_multiset(std::vector<FacePoset> a, std::vector<FacePoset> b) -> bool
{
    if (a.size() != b.size())
        return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && ! found; ++j)
            if (! used[j] && is_isomorphic(x, b[j])) {
                used[j] = 1;
                found = true;
            }
        if (! found)
            return false;
    }
    return true;
}

} // namespace test_support
