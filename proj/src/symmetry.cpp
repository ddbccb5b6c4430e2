#include <polyprod/error.hpp>
#include <polyprod/factorization.hpp>
#include <polyprod/symmetry.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace polyprod {

auto enumerate_flags(const Polytope& p) -> std::vector<Flag>
{
    return p.flag_set().flags();
}

auto adjacent_flag(const Polytope& p, const Flag& f, int i) -> Flag
{
    if (i < 0 || i >= p.rank())
        throw Error(ErrorCode::RankOutOfRange, "adjacency rank " + std::to_string(i) + " outside 0.." + std::to_string(p.rank() - 1));
    const FlagSet& fs = p.flag_set();
    auto idx = fs.index_of(f);
    if (! idx)
        throw Error(ErrorCode::InvalidInput, "not a flag of the polytope");
    return fs.flag(fs.adjacent(*idx, i));
}

namespace {

// Extends flag 0 -> target along adjacencies; nullopt if inconsistent.
auto extend(const Polytope& p, int target) -> std::optional<std::vector<int>>
{
    const FlagSet& fs = p.flag_set();
    const int nf = fs.size(), n = p.rank();
    std::vector<int> image(nf, -1), order{0};
    std::vector<char> used(nf, 0);
    image[0] = target;
    used[target] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        int x = order[k];
        for (int i = 0; i < n; ++i) {
            int nx = fs.adjacent(x, i), ny = fs.adjacent(image[x], i);
            if (image[nx] < 0) {
                if (used[ny])
                    return std::nullopt;
                image[nx] = ny;
                used[ny] = 1;
                order.push_back(nx);
            }
            else if (image[nx] != ny)
                return std::nullopt;
        }
    }
    // The induced face map must be well defined.
    std::vector<FaceId> faces(p.size(), -1);
    for (int x = 0; x < nf; ++x) {
        const Flag& a = fs.flag(x);
        const Flag& b = fs.flag(image[x]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (faces[a[r]] < 0)
                faces[a[r]] = b[r];
            else if (faces[a[r]] != b[r])
                return std::nullopt;
        }
    }
    return image;
}

auto orbit_of_zero(int nf, const std::vector<Permutation>& gens) -> std::vector<char>
{
    std::vector<char> in(nf, 0);
    std::vector<int> list{0};
    in[0] = 1;
    for (std::size_t k = 0; k < list.size(); ++k)
        for (const auto& g : gens) {
            int y = g[list[k]];
            if (! in[y]) {
                in[y] = 1;
                list.push_back(y);
            }
        }
    return in;
}

// Flag colours stable under automorphisms: start from the face colours along
// each flag, then refine by the colours of adjacent flags until stable.
auto flag_colours(const Polytope& p) -> std::vector<int>
{
    const FlagSet& fs = p.flag_set();
    const int nf = fs.size(), n = p.rank();
    auto face_colour = refine_colours({&p.poset()})[0];
    auto relabel = [](const std::vector<std::vector<int>>& keys, std::vector<int>& out) {
        std::map<std::vector<int>, int> ids;
        for (const auto& k : keys)
            ids.emplace(k, 0);
        int next = 0;
        for (auto& [k, v] : ids)
            v = next++;
        for (std::size_t x = 0; x < keys.size(); ++x)
            out[x] = ids[keys[x]];
        return next;
    };
    std::vector<std::vector<int>> keys(nf);
    for (int x = 0; x < nf; ++x)
        for (FaceId f : fs.flag(x))
            keys[x].push_back(face_colour[f]);
    std::vector<int> colour(nf);
    int classes = relabel(keys, colour);
    while (true) {
        for (int x = 0; x < nf; ++x) {
            keys[x].assign(1, colour[x]);
            for (int i = 0; i < n; ++i)
                keys[x].push_back(colour[fs.adjacent(x, i)]);
        }
        int next = relabel(keys, colour);
        if (next == classes)
            return colour;
        classes = next;
    }
}

} // namespace

auto automorphism_group(const Polytope& p) -> PermGroup
{
    const FlagSet& fs = p.flag_set();
    const int nf = fs.size();
    std::vector<Permutation> gens;
    if (p.rank() <= 0 || nf <= 1)
        return PermGroup(nf, {});

    auto colour = flag_colours(p);
    auto in_orbit = orbit_of_zero(nf, gens);
    for (int c = 1; c < nf; ++c) {
        if (in_orbit[c] || colour[c] != colour[0])
            continue;
        if (auto image = extend(p, c)) {
            gens.emplace_back(std::move(*image));
            in_orbit = orbit_of_zero(nf, gens);
        }
    }
    // The action is free, so the group order is the size of one orbit.
    auto order = static_cast<std::uint64_t>(std::count(in_orbit.begin(), in_orbit.end(), 1));
    return PermGroup(nf, std::move(gens), order);
}

auto face_map(const Polytope& p, const Permutation& automorphism) -> std::vector<FaceId>
{
    const FlagSet& fs = p.flag_set();
    std::vector<FaceId> faces(p.size(), -1);
    for (int x = 0; x < fs.size(); ++x) {
        const Flag& a = fs.flag(x);
        const Flag& b = fs.flag(automorphism[x]);
        for (std::size_t r = 0; r < a.size(); ++r)
            faces[a[r]] = b[r];
    }
    return faces;
}

auto flag_map(const Polytope& p, const std::vector<FaceId>& faces) -> Permutation
{
    const FlagSet& fs = p.flag_set();
    std::vector<int> images(fs.size());
    for (int x = 0; x < fs.size(); ++x) {
        Flag g = fs.flag(x);
        for (auto& f : g)
            f = faces.at(f);
        auto idx = fs.index_of(g);
        if (! idx)
            throw Error(ErrorCode::InvalidInput, "face map does not preserve flags");
        images[x] = *idx;
    }
    return Permutation(std::move(images));
}

auto sequence_count(const std::vector<int>& multiplicity) -> std::uint64_t
{
    std::uint64_t result = 1;
    std::uint64_t total = 0;
    for (int m : multiplicity) {
        // result *= binomial(total + m, m), one exact factor at a time.
        for (int i = 1; i <= m; ++i) {
            ++total;
            std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
            std::uint64_t num = total / (static_cast<std::uint64_t>(i) / g);
            if (__builtin_mul_overflow(result / g, num, &result))
                throw Error(ErrorCode::RangeError, "sequence count exceeds 64 bits");
        }
    }
    return result;
}

auto step_offset(ProductKind kind) -> int
{
    return kind == ProductKind::Join || kind == ProductKind::DirectSum ? -1 : 0;
}

namespace {

struct Layout {
    int first = 0;   // flag index of the first free face
    bool lead = false;  // factor flags gain their minimum in front
    bool trail = false; // factor flags gain their maximum at the end
    std::vector<int> steps;
    int total = 0;
};

auto layout(const ProductStructure& s) -> Layout
{
    Layout l;
    l.lead = step_offset(s.kind()) == 0;
    l.first = l.lead ? 1 : 0;
    l.trail = s.kind() == ProductKind::DirectSum || s.kind() == ProductKind::Topological;
    for (const auto& q : s.factors()) {
        l.steps.push_back(flag_steps(s.kind(), q.rank()));
        l.total += l.steps.back();
    }
    return l;
}

auto not_of_product(const std::string& why) -> Error
{
    return Error(ErrorCode::FlagNotOfProduct, why);
}

} // namespace

auto flag_decompose(const ProductStructure& s, const Flag& f) -> DecomposedFlag
{
    const Layout l = layout(s);
    const int r = s.factor_count();
    if (static_cast<int>(f.size()) < l.first + l.total + 1)
        throw not_of_product("flag too short for the product");
    for (FaceId x : f)
        if (x < 0 || x >= static_cast<int>(s.all_coords().size()))
            throw not_of_product("face id out of range");

    DecomposedFlag d;
    d.factor_flags.resize(r);
    d.sequence.multiplicity = l.steps;
    const auto& start = s.coords(f[l.first]);
    for (int j = 0; j < r; ++j) {
        if (l.lead)
            d.factor_flags[j].push_back(s.factors()[j].min_face());
        d.factor_flags[j].push_back(start[j]);
    }
    for (int t = 1; t <= l.total; ++t) {
        const auto& a = s.coords(f[l.first + t - 1]);
        const auto& b = s.coords(f[l.first + t]);
        int changed = -1;
        for (int j = 0; j < r; ++j)
            if (a[j] != b[j]) {
                if (changed >= 0)
                    throw not_of_product("a step changes two coordinates");
                changed = j;
            }
        if (changed < 0)
            throw not_of_product("a step changes no coordinate");
        const auto& down = s.factors()[changed].poset().lower_covers(b[changed]);
        if (! std::binary_search(down.begin(), down.end(), a[changed]))
            throw not_of_product("a step is not a cover in its factor");
        d.factor_flags[changed].push_back(b[changed]);
        d.sequence.entries.push_back(changed);
    }
    for (int j = 0; j < r; ++j) {
        if (l.trail)
            d.factor_flags[j].push_back(s.factors()[j].max_face());
        if (static_cast<int>(d.factor_flags[j].size()) != s.factors()[j].rank() + 2)
            throw not_of_product("incomplete factor flag");
    }
    return d;
}

auto flag_compose(const ProductStructure& s, const DecomposedFlag& d) -> Flag
{
    const Layout l = layout(s);
    const int r = s.factor_count();
    if (static_cast<int>(d.factor_flags.size()) != r || static_cast<int>(d.sequence.entries.size()) != l.total)
        throw not_of_product("wrong number of factor flags or steps");
    std::vector<int> count(r, 0);
    for (int j : d.sequence.entries) {
        if (j < 0 || j >= r)
            throw not_of_product("sequence entry out of range");
        ++count[j];
    }
    for (int j = 0; j < r; ++j)
        if (count[j] != l.steps[j] || static_cast<int>(d.factor_flags[j].size()) != s.factors()[j].rank() + 2)
            throw not_of_product("factor flag and sequence disagree");

    auto face = [&](const std::vector<FaceId>& t) {
        auto f = s.face_of(t);
        if (! f)
            throw not_of_product("tuple is not a face of the product");
        return *f;
    };
    Flag out;
    std::vector<FaceId> tuple(r);
    std::vector<int> pos(r, l.lead ? 1 : 0);
    if (l.lead) {
        for (int j = 0; j < r; ++j)
            tuple[j] = d.factor_flags[j].front();
        out.push_back(face(tuple));
    }
    for (int j = 0; j < r; ++j)
        tuple[j] = d.factor_flags[j][pos[j]];
    out.push_back(face(tuple));
    for (int j : d.sequence.entries) {
        tuple[j] = d.factor_flags[j][++pos[j]];
        out.push_back(face(tuple));
    }
    if (l.trail) {
        for (int j = 0; j < r; ++j)
            tuple[j] = d.factor_flags[j].back();
        out.push_back(face(tuple));
    }
    return out;
}

auto flag_orbit_count(const Polytope& p) -> int
{
    return static_cast<int>(automorphism_group(p).orbits().size());
}

auto orbit_report(const Polytope& p, ProductKind kind) -> OrbitReport
{
    OrbitReport out;
    out.kind = kind;
    out.flag_count = p.flag_count();
    auto group = automorphism_group(p);
    out.group_order = group.order();
    for (const auto& o : group.orbits())
        out.orbit_sizes.push_back(static_cast<int>(o.size()));
    out.actual = static_cast<int>(out.orbit_sizes.size());

    auto fr = factor(p, kind);
    std::vector<int> steps;
    std::uint64_t predicted = 1, order = 1, repeats = 1;
    auto mul = [](std::uint64_t& acc, std::uint64_t x) {
        if (__builtin_mul_overflow(acc, x, &acc))
            throw Error(ErrorCode::RangeError, "orbit formula exceeds 64 bits");
    };
    for (const auto& [q, m] : fr.factors) {
        OrbitReport::Term t{q, m, 0, std::max(0, flag_steps(kind, q.rank())), 0};
        auto g = automorphism_group(q);
        t.orbits = static_cast<int>(g.orbits().size());
        t.group_order = g.order();
        for (int i = 1; i <= m; ++i) {
            mul(predicted, static_cast<std::uint64_t>(t.orbits));
            mul(order, t.group_order);
            mul(order, static_cast<std::uint64_t>(i));
            mul(repeats, static_cast<std::uint64_t>(i));
            steps.push_back(t.steps);
        }
        out.terms.push_back(std::move(t));
    }
    // Sequences up to permuting equal factors.
    mul(predicted, sequence_count(steps) / repeats);
    out.predicted = predicted;
    out.predicted_group_order = order;
    return out;
}

} // namespace polyprod
