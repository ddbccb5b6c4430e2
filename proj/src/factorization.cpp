#include <polyprod/error.hpp>
#include <polyprod/factorization.hpp>

#include <algorithm>
#include <numeric>
#include <tuple>

namespace polyprod {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n)
    {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    auto find(int x) -> int
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    auto unite(int a, int b) -> void
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

auto edge_index(const std::vector<Cover>& edges, FaceId upper, FaceId lower) -> int
{
    auto it = std::lower_bound(edges.begin(), edges.end(), Cover{upper, lower});
    return static_cast<int>(it - edges.begin());
}

auto common(const std::vector<FaceId>& a, const std::vector<FaceId>& b) -> std::vector<FaceId>
{
    std::vector<FaceId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Cover edges that must belong to the same factor of any cardinal
// factorization: opposite sides of a square, two up-edges from a face with no
// common upper cover, and two down-edges with no common lower cover.
auto edge_classes(const FacePoset& p, const std::vector<Cover>& edges) -> std::vector<int>
{
    UnionFind uf(static_cast<int>(edges.size()));
    for (FaceId x = 0; x < p.size(); ++x) {
        const auto& up = p.upper_covers(x);
        for (std::size_t i = 0; i < up.size(); ++i)
            for (std::size_t j = i + 1; j < up.size(); ++j) {
                FaceId y1 = up[i], y2 = up[j];
                auto tops = common(p.upper_covers(y1), p.upper_covers(y2));
                if (tops.empty())
                    uf.unite(edge_index(edges, y1, x), edge_index(edges, y2, x));
                for (FaceId z : tops) {
                    uf.unite(edge_index(edges, y1, x), edge_index(edges, z, y2));
                    uf.unite(edge_index(edges, y2, x), edge_index(edges, z, y1));
                }
            }
        const auto& down = p.lower_covers(x);
        for (std::size_t i = 0; i < down.size(); ++i)
            for (std::size_t j = i + 1; j < down.size(); ++j)
                if (common(p.lower_covers(down[i]), p.lower_covers(down[j])).empty())
                    uf.unite(edge_index(edges, x, down[i]), edge_index(edges, x, down[j]));
    }
    std::vector<int> label(edges.size(), -1), out(edges.size());
    int next = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int r = uf.find(static_cast<int>(e));
        if (label[r] < 0)
            label[r] = next++;
        out[e] = label[r];
    }
    return out;
}

// Connected components using only the edges whose flag equals `want`.
auto components(int n, const std::vector<Cover>& edges, const std::vector<char>& in_s, bool want) -> std::vector<int>
{
    UnionFind uf(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (static_cast<bool>(in_s[e]) == want)
            uf.unite(edges[e].first, edges[e].second);
    std::vector<int> out(n);
    for (int x = 0; x < n; ++x)
        out[x] = uf.find(x);
    return out;
}

struct Split {
    FacePoset left, right;
    std::vector<int> a, b; // coordinate of each face in left and right
};

// Tests whether the edges flagged in in_s are exactly the edges of one factor.
auto try_split(const FacePoset& p, const std::vector<Cover>& edges, const std::vector<char>& in_s) -> std::optional<Split>
{
    const int n = p.size();
    auto comp_s = components(n, edges, in_s, true);
    auto comp_n = components(n, edges, in_s, false);
    std::vector<FaceId> left, right;
    for (FaceId x = 0; x < n; ++x) {
        if (comp_s[x] == comp_s[0])
            left.push_back(x);
        if (comp_n[x] == comp_n[0])
            right.push_back(x);
    }
    const int nl = static_cast<int>(left.size()), nr = static_cast<int>(right.size());
    if (nl < 2 || nr < 2 || static_cast<long long>(nl) * nr != n)
        return std::nullopt;

    std::vector<int> left_of(n, -1), right_of(n, -1);
    for (int i = 0; i < nl; ++i) {
        if (left_of[comp_n[left[i]]] >= 0)
            return std::nullopt;
        left_of[comp_n[left[i]]] = i;
    }
    for (int i = 0; i < nr; ++i) {
        if (right_of[comp_s[right[i]]] >= 0)
            return std::nullopt;
        right_of[comp_s[right[i]]] = i;
    }
    Split s;
    s.a.resize(n);
    s.b.resize(n);
    std::vector<char> hit(n, 0);
    for (FaceId x = 0; x < n; ++x) {
        s.a[x] = left_of[comp_n[x]];
        s.b[x] = right_of[comp_s[x]];
        if (s.a[x] < 0 || s.b[x] < 0 || hit[s.a[x] * nr + s.b[x]])
            return std::nullopt;
        hit[s.a[x] * nr + s.b[x]] = 1;
    }
    s.left = induced(p, left);
    s.right = induced(p, right);
    auto is_cover = [](const FacePoset& q, int upper, int lower) {
        const auto& d = q.lower_covers(upper);
        return std::binary_search(d.begin(), d.end(), lower);
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, l] = edges[e];
        bool ok = in_s[e] ? s.b[u] == s.b[l] && is_cover(s.left, s.a[u], s.a[l])
                          : s.a[u] == s.a[l] && is_cover(s.right, s.b[u], s.b[l]);
        if (! ok)
            return std::nullopt;
    }
    if (edges.size() != s.left.cover_count() * nr + nl * s.right.cover_count())
        return std::nullopt;
    return s;
}

auto combine(FacePoset left, const std::vector<int>& a, const std::vector<int>& b, const CardinalFactorization& rest)
    -> CardinalFactorization
{
    CardinalFactorization out;
    out.factors.push_back(std::move(left));
    out.factors.insert(out.factors.end(), rest.factors.begin(), rest.factors.end());
    out.coords.resize(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        out.coords[x].push_back(a[x]);
        const auto& tail = rest.coords[b[x]];
        out.coords[x].insert(out.coords[x].end(), tail.begin(), tail.end());
    }
    return out;
}

auto prime_result(const FacePoset& p) -> CardinalFactorization
{
    CardinalFactorization out;
    out.factors.push_back(p);
    out.coords.resize(p.size());
    for (FaceId x = 0; x < p.size(); ++x)
        out.coords[x] = {x};
    return out;
}

auto trivial_result() -> CardinalFactorization
{
    return {{}, {{}}};
}

auto normalise(CardinalFactorization r) -> CardinalFactorization
{
    for (auto& f : r.factors)
        f = shift_ranks(f, -f.min_rank());
    return r;
}

auto check_input(const FacePoset& p) -> void
{
    if (p.size() == 0)
        throw Error(ErrorCode::InvalidInput, "empty poset");
    if (! p.is_connected())
        throw Error(ErrorCode::Disconnected, "Hasse diagram is not connected");
}

auto factor_impl(const FacePoset& p) -> CardinalFactorization
{
    if (p.size() == 1)
        return trivial_result();
    auto edges = p.covers();
    auto cls = edge_classes(p, edges);
    const int c = edges.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;

    // Smallest class subsets first: the first valid one is a prime factor.
    std::vector<char> in_s(edges.size());
    for (int k = 1; 2 * k <= c; ++k) {
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<char> chosen(c, 0);
            for (int i : pick)
                chosen[i] = 1;
            for (std::size_t e = 0; e < edges.size(); ++e)
                in_s[e] = chosen[cls[e]];
            if (auto s = try_split(p, edges, in_s))
                return combine(std::move(s->left), s->a, s->b, factor_impl(s->right));
            int i = k - 1;
            while (i >= 0 && pick[i] == c - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return prime_result(p);
}

// Oracle ---------------------------------------------------------------------

constexpr int oracle_atom_limit = 14;

// Checks a candidate split by building the cardinal product explicitly.
auto oracle_accept(const FacePoset& p, const std::vector<FaceId>& left, const std::vector<FaceId>& right,
    const std::vector<int>& a, const std::vector<int>& b) -> bool
{
    auto l = induced(p, left);
    auto r = induced(p, right);
    auto prod = cardinal_product(shift_ranks(l, -l.min_rank()), shift_ranks(r, -r.min_rank()));
    if (prod.size() != p.size())
        return false;
    std::vector<FaceId> map(p.size());
    for (FaceId x = 0; x < p.size(); ++x)
        map[x] = a[x] * r.size() + b[x];
    return is_isomorphism(shift_ranks(p, -p.min_rank()), prod, map);
}

auto oracle_impl(const FacePoset& p) -> CardinalFactorization;

auto oracle_recurse(const FacePoset& p, const std::vector<FaceId>& left, const std::vector<FaceId>& right,
    const std::vector<int>& a, const std::vector<int>& b) -> CardinalFactorization
{
    auto lf = oracle_impl(induced(p, left));
    auto rf = oracle_impl(induced(p, right));
    CardinalFactorization out;
    out.factors = lf.factors;
    out.factors.insert(out.factors.end(), rf.factors.begin(), rf.factors.end());
    out.coords.resize(p.size());
    for (FaceId x = 0; x < p.size(); ++x) {
        out.coords[x] = lf.coords[a[x]];
        out.coords[x].insert(out.coords[x].end(), rf.coords[b[x]].begin(), rf.coords[b[x]].end());
    }
    return out;
}

// Posets with a minimum: each factor owns a block of atoms.
auto oracle_bounded_below(const FacePoset& p) -> CardinalFactorization
{
    const FaceId bottom = p.minimal_faces().front();
    const auto& atoms = p.upper_covers(bottom);
    const int k = static_cast<int>(atoms.size());
    if (k > oracle_atom_limit)
        throw Error(ErrorCode::TooLargeForOracle, "more than 14 atoms");
    Reachability reach(p);
    std::vector<unsigned> mask(p.size(), 0);
    for (FaceId x = 0; x < p.size(); ++x)
        for (int i = 0; i < k; ++i)
            if (reach.leq(atoms[i], x))
                mask[x] |= 1u << i;

    const unsigned full = (1u << k) - 1;
    for (unsigned A = 1; A < full; A += 2) {
        unsigned B = full & ~A;
        std::vector<FaceId> left, right;
        for (FaceId x = 0; x < p.size(); ++x) {
            if ((mask[x] & ~A) == 0)
                left.push_back(x);
            if ((mask[x] & ~B) == 0)
                right.push_back(x);
        }
        if (left.size() * right.size() != static_cast<std::size_t>(p.size()))
            continue;
        // Projection: the highest element of the block below x.
        auto project = [&](const std::vector<FaceId>& block, FaceId x) {
            int best = -1;
            for (std::size_t i = 0; i < block.size(); ++i)
                if (reach.leq(block[i], x) && (best < 0 || p.rank(block[i]) > p.rank(block[best])))
                    best = static_cast<int>(i);
            return best;
        };
        std::vector<int> a(p.size()), b(p.size());
        for (FaceId x = 0; x < p.size(); ++x) {
            a[x] = project(left, x);
            b[x] = project(right, x);
        }
        if (oracle_accept(p, left, right, a, b))
            return oracle_recurse(p, left, right, a, b);
    }
    return prime_result(p);
}

// Posets with neither a minimum nor a maximum: factor the up-set of a minimal
// face, seed edge colours from each grouping of its factors, and propagate.
auto oracle_unbounded(const FacePoset& p) -> CardinalFactorization
{
    const FaceId m = p.minimal_faces().front();
    Reachability reach(p);
    std::vector<FaceId> up;
    reach.up_set(m).for_each([&](int x) { up.push_back(x); });
    auto uf = oracle_bounded_below(induced(p, up));
    const int t = static_cast<int>(uf.factors.size());
    if (t < 2)
        return prime_result(p);

    auto edges = p.covers();
    auto cls = edge_classes(p, edges);
    const int c = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<int> pos(p.size(), -1);
    for (std::size_t i = 0; i < up.size(); ++i)
        pos[up[i]] = static_cast<int>(i);

    for (unsigned g = 1; g + 1 < (1u << t); g += 2) {
        // Colour classes from edges inside the up-set: 1 when the changed
        // coordinate belongs to the group g.
        std::vector<int> colour(c, -1);
        bool conflict = false;
        for (std::size_t e = 0; e < edges.size() && ! conflict; ++e) {
            auto [u, l] = edges[e];
            if (pos[u] < 0 || pos[l] < 0)
                continue;
            const auto& cu = uf.coords[pos[u]];
            const auto& cl = uf.coords[pos[l]];
            int changed = -1;
            for (int i = 0; i < t; ++i)
                if (cu[i] != cl[i])
                    changed = i;
            int col = (g >> changed) & 1;
            if (colour[cls[e]] >= 0 && colour[cls[e]] != col)
                conflict = true;
            colour[cls[e]] = col;
        }
        if (conflict)
            continue;
        std::vector<int> free;
        for (int i = 0; i < c; ++i)
            if (colour[i] < 0)
                free.push_back(i);
        if (free.size() > oracle_atom_limit)
            throw Error(ErrorCode::TooLargeForOracle, "too many unseeded edge classes");
        for (unsigned fill = 0; fill < (1u << free.size()); ++fill) {
            for (std::size_t i = 0; i < free.size(); ++i)
                colour[free[i]] = (fill >> i) & 1;
            std::vector<char> in_s(edges.size());
            for (std::size_t e = 0; e < edges.size(); ++e)
                in_s[e] = static_cast<char>(colour[cls[e]]);
            auto comp_s = components(p.size(), edges, in_s, true);
            auto comp_n = components(p.size(), edges, in_s, false);
            std::vector<FaceId> left, right;
            for (FaceId x = 0; x < p.size(); ++x) {
                if (comp_s[x] == comp_s[m])
                    left.push_back(x);
                if (comp_n[x] == comp_n[m])
                    right.push_back(x);
            }
            if (left.size() < 2 || right.size() < 2 || left.size() * right.size() != static_cast<std::size_t>(p.size()))
                continue;
            // Coordinates: the unique face of each block in the same component.
            std::vector<int> a(p.size(), -1), b(p.size(), -1);
            for (std::size_t i = 0; i < left.size(); ++i)
                for (FaceId x = 0; x < p.size(); ++x)
                    if (comp_n[x] == comp_n[left[i]])
                        a[x] = static_cast<int>(i);
            for (std::size_t i = 0; i < right.size(); ++i)
                for (FaceId x = 0; x < p.size(); ++x)
                    if (comp_s[x] == comp_s[right[i]])
                        b[x] = static_cast<int>(i);
            if (std::find(a.begin(), a.end(), -1) != a.end() || std::find(b.begin(), b.end(), -1) != b.end())
                continue;
            if (oracle_accept(p, left, right, a, b))
                return oracle_recurse(p, left, right, a, b);
        }
    }
    return prime_result(p);
}

auto oracle_impl(const FacePoset& p) -> CardinalFactorization
{
    if (p.size() == 1)
        return trivial_result();
    if (p.minimal_faces().size() == 1)
        return oracle_bounded_below(p);
    if (p.maximal_faces().size() == 1) {
        auto r = oracle_bounded_below(dual(p));
        for (auto& f : r.factors)
            f = dual(f);
        return r;
    }
    return oracle_unbounded(p);
}

} // namespace

auto factor_cardinal(const FacePoset& poset) -> CardinalFactorization
{
    check_input(poset);
    return normalise(factor_impl(poset));
}

auto oracle_factor(const FacePoset& poset) -> CardinalFactorization
{
    check_input(poset);
    return normalise(oracle_impl(poset));
}

auto FactorizationResult::expanded() const -> std::vector<Polytope>
{
    std::vector<Polytope> out;
    for (const auto& [q, m] : factors)
        for (int i = 0; i < m; ++i)
            out.push_back(q);
    return out;
}

auto FactorizationResult::factor_count() const -> int
{
    int n = 0;
    for (const auto& f : factors)
        n += f.second;
    return n;
}

namespace {

auto rebuild_check(const Polytope& p, const FactorizationResult& r) -> void
{
    auto prod = product_many(r.kind, r.expanded());
    if (r.factors.empty()) {
        if (! is_isomorphic(p, prod.polytope))
            throw Error(ErrorCode::RebuildMismatch, "trivial factorization does not rebuild the input");
        return;
    }
    std::vector<FaceId> map(p.size());
    for (FaceId f = 0; f < p.size(); ++f) {
        auto g = prod.structure.face_of(r.coordinatization[f]);
        if (! g)
            throw Error(ErrorCode::RebuildMismatch, "coordinate tuple is not a face of the product");
        map[f] = *g;
    }
    if (! is_isomorphism(p.poset(), prod.polytope.poset(), map))
        throw Error(ErrorCode::RebuildMismatch, "coordinatization is not an isomorphism");
}

} // namespace

auto factor(const Polytope& p, ProductKind kind) -> FactorizationResult
{
    if (p.is_empty() && kind != ProductKind::Join)
        throw Error(ErrorCode::EmptyOperand, "the empty polytope has no factorization under this product");
    FactorizationResult out{kind, {}, {}};
    out.coordinatization.resize(p.size());

    if (kind == ProductKind::Topological && p.rank() < 2) {
        out.factors.emplace_back(p, 1);
        for (FaceId f = 0; f < p.size(); ++f)
            out.coordinatization[f] = {f};
        return out;
    }

    const Ends ends = stripped_ends(kind);
    const bool cut_min = ends == Ends::Min || ends == Ends::Both;
    const bool cut_max = ends == Ends::Max || ends == Ends::Both;
    auto [stripped, kept] = strip_with_map(p, ends);
    auto cf = factor_cardinal(stripped);

    std::vector<Polytope> polys;
    std::vector<FaceId> mins, maxs;
    for (const auto& f : cf.factors) {
        auto q = shift_ranks(f, cut_min ? 0 : -1);
        FaceId next = q.size();
        if (ends != Ends::None)
            q = cap(q, ends);
        try {
            polys.push_back(Polytope::from_poset(std::move(q)));
        }
        catch (const Error&) {
            throw Error(ErrorCode::RebuildMismatch, "a capped factor is not a polytope");
        }
        mins.push_back(cut_min ? next : polys.back().min_face());
        maxs.push_back(cut_max ? next + (cut_min ? 1 : 0) : polys.back().max_face());
    }
    std::vector<int> where(p.size(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i)
        where[kept[i]] = static_cast<int>(i);
    for (FaceId f = 0; f < p.size(); ++f) {
        if (where[f] >= 0)
            out.coordinatization[f] = cf.coords[where[f]];
        else
            out.coordinatization[f] = f == p.min_face() ? mins : maxs;
    }

    const int r = static_cast<int>(polys.size());
    if (r == 1)
        out.factors.emplace_back(polys.front(), 1);
    if (r >= 2) {
        // Relabel factors canonically so equal factors become identical, then
        // sort and group them.
        std::vector<CanonicalForm> forms;
        for (auto& q : polys) {
            forms.push_back(canonical_form(q));
            q = Polytope::trusted(forms.back().poset);
        }
        for (auto& t : out.coordinatization)
            for (int i = 0; i < r; ++i)
                t[i] = forms[i].map[t[i]];
        std::vector<int> order(r);
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](int i) {
            return std::tuple<int, int, const std::vector<int>&>(polys[i].size(), polys[i].flag_count(), forms[i].code);
        };
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
        for (auto& t : out.coordinatization) {
            std::vector<FaceId> permuted(r);
            for (int i = 0; i < r; ++i)
                permuted[i] = t[order[i]];
            t = std::move(permuted);
        }
        for (int i = 0; i < r; ++i) {
            if (i > 0 && key(order[i]) == key(order[i - 1]))
                ++out.factors.back().second;
            else
                out.factors.emplace_back(polys[order[i]], 1);
        }
    }
    rebuild_check(p, out);
    return out;
}

auto is_prime(const Polytope& p, ProductKind kind) -> bool
{
    auto r = factor(p, kind);
    return r.factors.size() == 1 && r.factors.front().second == 1;
}

auto product_structure(const FactorizationResult& r) -> ProductStructure
{
    return ProductStructure(r.kind, r.expanded(), r.coordinatization);
}

} // namespace polyprod
