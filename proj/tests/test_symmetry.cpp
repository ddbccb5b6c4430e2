#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <polyprod/error.hpp>
#include <polyprod/factorization.hpp>
#include <polyprod/symmetry.hpp>

#include <set>

using namespace polyprod;
using namespace test_support;

namespace {

auto code_of(auto&& f) -> ErrorCode
{
    try {
        f();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
}

// Counts cover-preserving face bijections by backtracking over faces in id
// order; independent of the flag machinery.
auto brute_automorphism_count(const FacePoset& p) -> std::int64_t
{
    const int n = p.size();
    std::vector<FaceId> map(n, -1);
    std::vector<char> used(n, 0);
    std::int64_t count = 0;
    std::function<void(int)> go = [&](int x) {
        if (x == n) {
            ++count;
            return;
        }
        for (FaceId y = 0; y < n; ++y) {
            if (used[y] || p.rank(y) != p.rank(x) || p.upper_covers(y).size() != p.upper_covers(x).size())
                continue;
            bool ok = true;
            for (FaceId l : p.lower_covers(x))
                if (l < x) {
                    const auto& d = p.lower_covers(y);
                    ok = ok && std::binary_search(d.begin(), d.end(), map[l]);
                }
            for (FaceId u : p.upper_covers(x))
                if (u < x) {
                    const auto& up = p.upper_covers(y);
                    ok = ok && std::binary_search(up.begin(), up.end(), map[u]);
                }
            if (! ok)
                continue;
            map[x] = y;
            used[y] = 1;
            go(x + 1);
            used[y] = 0;
        }
    };
    go(0);
    return count;
}

auto rank_four_catalog() -> std::vector<Named>
{
    std::vector<Named> out;
    for (auto& n : small_catalog())
        if (n.p.rank() <= 4)
            out.push_back(n);
    return out;
}

} // namespace

TEST_CASE("flag enumeration")
{
    CHECK(enumerate_flags(gon(5)).size() == 10);
    CHECK(enumerate_flags(pyr(gon(4))).size() == 32);
    CHECK(enumerate_flags(pri(gon(5))).size() == 60);
    for (const auto& [name, p] : small_catalog()) {
        CAPTURE(name);
        auto flags = enumerate_flags(p);
        CHECK(std::is_sorted(flags.begin(), flags.end()));
        CHECK(static_cast<std::int64_t>(flags.size()) == count_chains(p.poset(), p.min_face()));
        for (const auto& f : flags) {
            CHECK(static_cast<int>(f.size()) == p.rank() + 2);
            for (std::size_t r = 1; r < f.size(); ++r) {
                const auto& d = p.poset().lower_covers(f[r]);
                CHECK(std::binary_search(d.begin(), d.end(), f[r - 1]));
            }
        }
    }
}

TEST_CASE("flag adjacency")
{
    for (const auto& [name, p] : rank_four_catalog()) {
        CAPTURE(name);
        for (const auto& f : enumerate_flags(p))
            for (int i = 0; i < p.rank(); ++i) {
                auto g = adjacent_flag(p, f, i);
                CHECK(g != f);
                for (int r = 0; r < static_cast<int>(f.size()); ++r)
                    if (r != i + 1)
                        CHECK(g[r] == f[r]);
                CHECK(adjacent_flag(p, g, i) == f);
                for (int j = i + 2; j < p.rank(); ++j)
                    CHECK(adjacent_flag(p, adjacent_flag(p, f, i), j) == adjacent_flag(p, adjacent_flag(p, f, j), i));
            }
    }
    auto t = gon(3);
    auto f = enumerate_flags(t).front();
    auto g = adjacent_flag(t, f, 0);
    CHECK(g[0] == f[0]);
    CHECK(g[1] != f[1]);
    CHECK(g[2] == f[2]);
    CHECK(g[3] == f[3]);
    CHECK(code_of([&] { adjacent_flag(t, f, 2); }) == ErrorCode::RankOutOfRange);
    CHECK(code_of([&] { adjacent_flag(t, f, -1); }) == ErrorCode::RankOutOfRange);
    CHECK(code_of([&] { adjacent_flag(t, Flag{0, 1, 1, 7}, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("automorphism groups")
{
    CHECK(automorphism_group(cube(3)).order() == 48);
    CHECK(automorphism_group(pri(gon(5))).order() == 20);
    CHECK(automorphism_group(simplex(3)).order() == 24);
    for (int n = 2; n <= 4; ++n)
        CHECK(automorphism_group(cube(n)).order() == static_cast<std::uint64_t>((1 << n) * factorial(n)));
    for (int p = 3; p <= 8; ++p)
        CHECK(automorphism_group(gon(p)).order() == static_cast<std::uint64_t>(2 * p));
    CHECK(automorphism_group(pri(gon(4))).order() == 48);
    CHECK(automorphism_group(pri(gon(6))).order() == 24);

    SUBCASE("agrees with brute-force face automorphism counts")
    {
        std::vector<Named> small{{"gon(5)", gon(5)}, {"simplex(3)", simplex(3)}, {"cube(3)", cube(3)},
            {"pri(gon(5))", pri(gon(5))}, {"pyr(gon(4))", pyr(gon(4))}, {"cross(3)", cross(3)}};
        for (const auto& [name, p] : small) {
            CAPTURE(name);
            CHECK(automorphism_group(p).order() == static_cast<std::uint64_t>(brute_automorphism_count(p.poset())));
        }
    }
    SUBCASE("free action and face maps")
    {
        for (const auto& [name, p] : rank_four_catalog()) {
            CAPTURE(name);
            auto g = automorphism_group(p);
            for (const auto& o : g.orbits())
                CHECK(o.size() == g.order());
            for (const auto& a : g.generators()) {
                auto fm = face_map(p, a);
                CHECK(is_isomorphism(p.poset(), p.poset(), fm));
                CHECK(flag_map(p, fm) == a);
            }
        }
    }
}

TEST_CASE("orbit report examples")
{
    struct Case {
        const char* name;
        Polytope p;
        ProductKind kind;
        int orbits;
    };
    std::vector<Case> cases{
        {"pri(gon(5))", pri(gon(5)), ProductKind::Cartesian, 3},
        {"pyr(gon(4))", pyr(gon(4)), ProductKind::Join, 4},
        {"gon(3) topo gon(4)", product(ProductKind::Topological, gon(3), gon(4)), ProductKind::Topological, 2},
        {"cube(4)", cube(4), ProductKind::Cartesian, 1},
        {"bipyr(gon(5))", bipyr(gon(5)), ProductKind::DirectSum, 3},
        {"simplex(4)", simplex(4), ProductKind::Join, 1},
        {"cross(3)", cross(3), ProductKind::DirectSum, 1},
        {"torus(4,2)", torus(4, 2), ProductKind::Topological, 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        auto r = orbit_report(c.p, c.kind);
        CHECK(r.actual == c.orbits);
        CHECK(r.predicted == static_cast<std::uint64_t>(c.orbits));
        int total = 0;
        for (int s : r.orbit_sizes)
            total += s;
        CHECK(total == r.flag_count);
        CHECK(r.group_order * r.actual == static_cast<std::uint64_t>(r.flag_count));
    }
    auto pr = orbit_report(pri(gon(5)), ProductKind::Cartesian);
    REQUIRE(pr.terms.size() == 2);
    CHECK(pr.terms[0].steps == 1);
    CHECK(pr.terms[1].steps == 2);
}

TEST_CASE("orbit formula over products of catalog objects")
{
    std::vector<Named> ops{{"point", point()}, {"edge", edge()}, {"gon(3)", gon(3)}, {"gon(4)", gon(4)},
        {"gon(5)", gon(5)}, {"gon(6)", gon(6)}, {"pyr(gon(4))", pyr(gon(4))}, {"simplex(3)", simplex(3)}};
    for (auto k : all_product_kinds)
        for (const auto& a : ops)
            for (const auto& b : ops) {
                if (k == ProductKind::Topological && (a.p.rank() < 2 || b.p.rank() < 2))
                    continue;
                auto p = product(k, a.p, b.p);
                if (p.size() > 2000)
                    continue;
                CAPTURE(kind_name(k));
                CAPTURE(a.name);
                CAPTURE(b.name);
                auto r = orbit_report(p, k);
                CHECK(r.actual == static_cast<int>(r.predicted));
                CHECK(r.group_order == r.predicted_group_order);
            }
}

TEST_CASE("automorphism group orders of products")
{
    std::vector<Named> list;
    for (int n = 1; n <= 4; ++n) {
        list.push_back({"cube", cube(n)});
        list.push_back({"simplex", simplex(n)});
    }
    list.push_back({"cross(3)", cross(3)});
    for (int p = 3; p <= 8; ++p)
        list.push_back({"pri(gon(" + std::to_string(p) + "))", pri(gon(p))});
    list.push_back({"torus(4,2)", torus(4, 2)});
    auto kind_for = [](const std::string& name) {
        if (name.rfind("simplex", 0) == 0)
            return ProductKind::Join;
        if (name.rfind("cross", 0) == 0)
            return ProductKind::DirectSum;
        if (name.rfind("torus", 0) == 0)
            return ProductKind::Topological;
        return ProductKind::Cartesian;
    };
    for (const auto& [name, p] : list) {
        CAPTURE(name);
        auto r = orbit_report(p, kind_for(name));
        CHECK(r.group_order == r.predicted_group_order);
    }

    // Relatively prime factors: orders multiply.
    CHECK(automorphism_group(pri(gon(5))).order() == automorphism_group(edge()).order() * automorphism_group(gon(5)).order());
    CHECK(automorphism_group(pyr(gon(5))).order() == automorphism_group(gon(5)).order());
    auto t = product(ProductKind::Topological, gon(3), gon(4));
    CHECK(automorphism_group(t).order() == automorphism_group(gon(3)).order() * automorphism_group(gon(4)).order());
}

TEST_CASE("regularity classification")
{
    std::vector<Polytope> regular{simplex(3), cube(3), cross(3), torus(3, 2), torus(4, 2), cube(4), simplex(4)};
    for (const auto& p : regular)
        CHECK(flag_orbit_count(p) == 1);
    std::vector<Polytope> irregular{pri(gon(5)), pyr(gon(4)), bipyr(gon(5)), product(ProductKind::Topological, gon(3), gon(4)),
        product(ProductKind::Join, edge(), gon(5)), product(ProductKind::Cartesian, gon(3), gon(5))};
    for (const auto& p : irregular)
        CHECK(flag_orbit_count(p) > 1);
}

TEST_CASE("flag decomposition")
{
    SUBCASE("round trip on every flag")
    {
        std::vector<std::pair<Polytope, ProductKind>> cases{{pri(gon(5)), ProductKind::Cartesian},
            {pyr(gon(4)), ProductKind::Join}, {bipyr(gon(5)), ProductKind::DirectSum},
            {torus(4, 2), ProductKind::Topological}, {product(ProductKind::Topological, gon(3), gon(4)), ProductKind::Topological},
            {cube(3), ProductKind::Cartesian}, {simplex(3), ProductKind::Join}};
        for (const auto& [p, k] : cases) {
            CAPTURE(kind_name(k));
            auto s = product_structure(factor(p, k));
            std::set<std::vector<int>> seqs;
            std::int64_t factor_flags = 1;
            for (const auto& q : s.factors())
                factor_flags *= q.flag_count();
            for (const auto& f : enumerate_flags(p)) {
                auto d = flag_decompose(s, f);
                CHECK(flag_compose(s, d) == f);
                seqs.insert(d.sequence.entries);
                for (int j = 0; j < s.factor_count(); ++j)
                    CHECK(s.factors()[j].flag_set().index_of(d.factor_flags[j]).has_value());
            }
            std::vector<int> steps;
            for (const auto& q : s.factors())
                steps.push_back(flag_steps(k, q.rank()));
            CHECK(seqs.size() == sequence_count(steps));
            CHECK(p.flag_count() == factor_flags * static_cast<std::int64_t>(sequence_count(steps)));
        }
    }
    SUBCASE("pyramid counts")
    {
        auto s = product_structure(factor(pyr(gon(4)), ProductKind::Join));
        REQUIRE(s.factor_count() == 2);
        CHECK(s.factors()[0].flag_count() == 1);
        CHECK(s.factors()[1].flag_count() == 8);
        CHECK(sequence_count({1, 3}) == 4);
    }
    SUBCASE("join entries mark the changed coordinate")
    {
        auto p = pyr(gon(4));
        auto s = product_structure(factor(p, ProductKind::Join));
        for (const auto& f : enumerate_flags(p)) {
            auto d = flag_decompose(s, f);
            for (std::size_t i = 0; i < d.sequence.entries.size(); ++i) {
                const auto& a = s.coords(f[i]);
                const auto& b = s.coords(f[i + 1]);
                int j = d.sequence.entries[i];
                CHECK(a[j] != b[j]);
                for (int o = 0; o < s.factor_count(); ++o)
                    if (o != j)
                        CHECK(a[o] == b[o]);
            }
        }
    }
    SUBCASE("composition enumerates every flag")
    {
        auto p = product(ProductKind::Cartesian, gon(3), edge());
        auto s = product_structure(factor(p, ProductKind::Cartesian));
        std::set<Flag> built;
        const auto& f0 = s.factors()[0].flag_set().flags();
        const auto& f1 = s.factors()[1].flag_set().flags();
        int r0 = flag_steps(ProductKind::Cartesian, s.factors()[0].rank());
        int r1 = flag_steps(ProductKind::Cartesian, s.factors()[1].rank());
        std::vector<int> seq(r0 + r1, 0);
        std::fill(seq.begin() + r0, seq.end(), 1);
        std::sort(seq.begin(), seq.end());
        do {
            for (const auto& a : f0)
                for (const auto& b : f1)
                    built.insert(flag_compose(s, {{a, b}, {seq, {r0, r1}}}));
        } while (std::next_permutation(seq.begin(), seq.end()));
        CHECK(static_cast<int>(built.size()) == p.flag_count());
    }
    SUBCASE("errors")
    {
        auto p = pri(gon(5));
        auto s = product_structure(factor(p, ProductKind::Cartesian));
        auto f = enumerate_flags(p).front();
        auto bad = f;
        bad[1] = f[3];
        CHECK(code_of([&] { flag_decompose(s, bad); }) == ErrorCode::FlagNotOfProduct);
        auto d = flag_decompose(s, f);
        d.sequence.entries.pop_back();
        CHECK(code_of([&] { flag_compose(s, d); }) == ErrorCode::FlagNotOfProduct);
    }
}
