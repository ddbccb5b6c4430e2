#include <polyprod/catalog.hpp>
#include <polyprod/error.hpp>
#include <polyprod/monodromy.hpp>
#include <polyprod/symmetry.hpp>

#include <algorithm>
#include <numeric>

namespace polyprod {

auto monodromy_generators(const Polytope& p) -> MonodromyGens
{
    const FlagSet& fs = p.flag_set();
    MonodromyGens g;
    g.degree = fs.size();
    for (int i = 0; i < p.rank(); ++i) {
        std::vector<int> images(fs.size());
        for (int x = 0; x < fs.size(); ++x)
            images[x] = fs.adjacent(x, i);
        g.r.emplace_back(std::move(images));
    }
    return g;
}

auto monodromy_group(const Polytope& p) -> Monodromy
{
    auto gens = monodromy_generators(p);
    PermGroup group(gens.degree, gens.r);
    return {std::move(gens), std::move(group)};
}

namespace {

// Whether factor flags gain their minimum in front when a product flag is
// decomposed.
auto leads(ProductKind kind) -> bool
{
    return step_offset(kind) == 0;
}

auto steps_of(const ProductStructure& s) -> std::vector<int>
{
    std::vector<int> steps;
    for (const auto& q : s.factors())
        steps.push_back(flag_steps(s.kind(), q.rank()));
    return steps;
}

} // namespace

WreathSpace::WreathSpace(const Polytope& p, ProductStructure s)
    : p_(p), s_(std::make_shared<const ProductStructure>(std::move(s)))
{
    std::vector<int> word;
    const auto steps = steps_of(*s_);
    for (std::size_t j = 0; j < steps.size(); ++j)
        word.insert(word.end(), std::max(0, steps[j]), static_cast<int>(j));
    n_ = static_cast<int>(word.size());
    do {
        sequence_ids_.emplace(word, static_cast<int>(sequences_.size()));
        sequences_.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));

    const FlagSet& fs = p_.flag_set();
    for (int x = 0; x < fs.size(); ++x) {
        auto d = flag_decompose(*s_, fs.flag(x));
        Coordinates c;
        for (int j = 0; j < s_->factor_count(); ++j) {
            auto idx = s_->factors()[j].flag_set().index_of(d.factor_flags[j]);
            if (! idx)
                throw Error(ErrorCode::FlagNotOfProduct, "factor flag not found");
            c.factor_flags.push_back(*idx);
        }
        c.sequence = sequence_index(d.sequence.entries);
        if (! flag_ids_.emplace(std::make_pair(c.sequence, c.factor_flags), x).second)
            throw Error(ErrorCode::FlagNotOfProduct, "two flags share coordinates");
        coords_.push_back(std::move(c));
    }
    std::size_t expected = sequences_.size();
    for (const auto& q : s_->factors())
        expected *= static_cast<std::size_t>(q.flag_count());
    if (expected != coords_.size())
        throw Error(ErrorCode::FlagNotOfProduct, "flag count differs from the product of factor flag counts");
}

auto WreathSpace::sequence_index(const std::vector<int>& a) const -> int
{
    auto it = sequence_ids_.find(a);
    if (it == sequence_ids_.end())
        throw Error(ErrorCode::InvalidInput, "not an adjacency sequence of the product");
    return it->second;
}

auto WreathSpace::factor_flag_count(int j) const -> int
{
    return s_->factors().at(j).flag_count();
}

auto WreathSpace::flag_of(const Coordinates& c) const -> int
{
    auto it = flag_ids_.find(std::make_pair(c.sequence, c.factor_flags));
    if (it == flag_ids_.end())
        throw Error(ErrorCode::InvalidInput, "coordinates name no flag");
    return it->second;
}

auto wreath_identity(const WreathSpace& w) -> WreathElement
{
    WreathElement e;
    std::vector<Permutation> ids;
    for (int j = 0; j < w.structure().factor_count(); ++j)
        ids.emplace_back(w.factor_flag_count(j));
    e.labels.assign(w.sequences().size(), ids);
    e.top = Permutation(w.n());
    return e;
}

namespace {

// a alpha^-1: the entry at position x moves to position alpha[x].
auto move_sequence(const std::vector<int>& a, const Permutation& alpha) -> std::vector<int>
{
    std::vector<int> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        out[alpha[static_cast<int>(x)]] = a[x];
    return out;
}

} // namespace

auto wreath_multiply(const WreathSpace& w, const WreathElement& a, const WreathElement& b) -> WreathElement
{
    WreathElement out;
    out.top = a.top * b.top;
    out.labels.resize(w.sequences().size());
    for (std::size_t s = 0; s < w.sequences().size(); ++s) {
        int moved = w.sequence_index(move_sequence(w.sequences()[s], a.top));
        for (std::size_t j = 0; j < a.labels[s].size(); ++j)
            out.labels[s].push_back(a.labels[s][j] * b.labels[moved][j]);
    }
    return out;
}

auto wreath_act(const WreathSpace& w, int flag, const WreathElement& e) -> int
{
    const auto& c = w.coordinates(flag);
    WreathSpace::Coordinates out;
    for (std::size_t j = 0; j < c.factor_flags.size(); ++j)
        out.factor_flags.push_back(e.labels[c.sequence][j][c.factor_flags[j]]);
    out.sequence = w.sequence_index(move_sequence(w.sequences()[c.sequence], e.top));
    return w.flag_of(out);
}

auto wreath_permutation(const WreathSpace& w, const WreathElement& e) -> Permutation
{
    const int nf = w.polytope().flag_count();
    std::vector<int> images(nf);
    for (int x = 0; x < nf; ++x)
        images[x] = wreath_act(w, x, e);
    return Permutation(std::move(images));
}

auto wreath_embed(const Polytope& p, const ProductStructure& s) -> WreathEmbedding
{
    WreathEmbedding out{WreathSpace(p, s), {}};
    const WreathSpace& w = out.space;
    const int n = w.n();
    const int lead = leads(s.kind()) ? 1 : 0;
    std::vector<MonodromyGens> factor_gens;
    for (const auto& q : s.factors())
        factor_gens.push_back(monodromy_generators(q));

    for (int k = 0; k < p.rank(); ++k) {
        // The rank-k face of a product flag sits after t steps.
        const int t = k + 1 - lead;
        WreathElement e = wreath_identity(w);
        if (t >= 1 && t <= n - 1)
            e.top = Permutation::from_cycles(n, {{t - 1, t}});
        for (std::size_t b = 0; b < w.sequences().size(); ++b) {
            const auto& a = w.sequences()[b];
            int j = -1;
            if (t == 0)
                j = a.front();
            else if (t == n)
                j = a.back();
            else if (a[t - 1] == a[t])
                j = a[t];
            if (j < 0)
                continue; // the steps swap, factor flags stay
            int local = lead + static_cast<int>(std::count(a.begin(), a.begin() + t, j)) - 1;
            e.labels[b][j] = factor_gens[j].r.at(local);
        }
        const FlagSet& fs = p.flag_set();
        for (int x = 0; x < fs.size(); ++x)
            if (wreath_act(w, x, e) != fs.adjacent(x, k))
                throw Error(ErrorCode::EmbeddingMismatch,
                    "w_" + std::to_string(k) + " disagrees with r_" + std::to_string(k) + " at flag " + std::to_string(x));
        out.generators.push_back(std::move(e));
    }
    return out;
}

auto wreath_embed(const Polytope& p, const FactorizationResult& f) -> WreathEmbedding
{
    return wreath_embed(p, product_structure(f));
}

auto split_verdict_name(SplitVerdict v) -> std::string
{
    switch (v) {
    case SplitVerdict::Split: return "Split";
    case SplitVerdict::NonSplit: return "NonSplit";
    case SplitVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

auto ExtensionReport::all_passed() const -> bool
{
    return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.passed(); });
}

auto factorial(int n) -> std::uint64_t
{
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i)
        if (__builtin_mul_overflow(r, static_cast<std::uint64_t>(i), &r))
            throw Error(ErrorCode::RangeError, "factorial exceeds 64 bits");
    return r;
}

namespace {

auto ipow(std::uint64_t base, int e) -> std::uint64_t
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        if (__builtin_mul_overflow(r, base, &r))
            throw Error(ErrorCode::RangeError, "power exceeds 64 bits");
    return r;
}

auto decide_split(const PermGroup& g, const PermGroup& k, std::uint64_t target, std::size_t budget, std::string subject)
    -> SplitResult
{
    SplitResult r{std::move(subject), target, SplitVerdict::Unknown, {}};
    try {
        if (auto c = find_complement(g, k, target, budget)) {
            r.verdict = SplitVerdict::Split;
            r.witness = c->generators();
        }
        else
            r.verdict = SplitVerdict::NonSplit;
    }
    catch (const Error& e) {
        if (e.code() != ErrorCode::SearchBudgetExceeded)
            throw;
    }
    return r;
}

auto flag(bool b) -> std::uint64_t
{
    return b ? 1 : 0;
}

} // namespace

auto projection(const Polytope& p, const ProductStructure& s) -> Projection
{
    auto mono = monodromy_group(p);
    auto emb = wreath_embed(p, s);
    const int n = emb.space.n();
    std::vector<Permutation> tops;
    for (const auto& w : emb.generators)
        tops.push_back(w.top);
    PermGroup image(n, tops);
    PermGroup kernel = kernel_of_action(mono.group, tops);

    ExtensionReport r;
    r.monodromy_order = mono.group.order();
    r.n = n;
    r.image_order = image.order();
    r.kernel_order = kernel.order();
    r.subgroups.emplace_back("K", r.kernel_order);
    r.checks.push_back({"image of pi is S_n", factorial(n), r.image_order});
    r.checks.push_back({"|M| = |K| n!", r.monodromy_order, r.kernel_order * factorial(n)});
    return {std::move(mono), std::move(emb), std::move(image), std::move(kernel), std::move(r)};
}

auto projection_report(const Polytope& p, const FactorizationResult& f, std::size_t budget) -> ExtensionReport
{
    auto proj = projection(p, product_structure(f));
    auto& r = proj.report;
    r.subgroups.emplace_back("M/K", r.monodromy_order / r.kernel_order);
    r.splits.push_back(decide_split(proj.monodromy.group, proj.kernel, factorial(r.n), budget, "M over K"));
    return std::move(proj.report);
}

auto prism_structure(int p, std::size_t budget) -> ExtensionReport
{
    if (p < 3)
        throw Error(ErrorCode::ParameterOutOfRange, "prism_structure needs p >= 3");
    auto prod = product_many(ProductKind::Cartesian, {edge(), gon(p)});
    auto proj = projection(prod.polytope, prod.structure);
    ExtensionReport& r = proj.report;
    const auto& s = proj.monodromy.gens.r;
    const PermGroup& m_group = proj.monodromy.group;
    const PermGroup& k_group = proj.kernel;
    const int deg = proj.monodromy.gens.degree;
    const std::uint64_t m = static_cast<std::uint64_t>(p / std::gcd(p, 4));

    const Permutation b = (s[0] * s[1]).pow(2);
    const Permutation c = s[2] * b * s[2];
    const Permutation d = s[1] * c * s[1];
    PermGroup h(deg, {b.pow(2), c.pow(2), d.pow(2)});
    PermGroup abc(deg, {s[0], b, c});

    r.checks.push_back({"|M| = 48 m^3", 48 * ipow(m, 3), r.monodromy_order});
    r.checks.push_back({"order(s0 s1) = 4m", 4 * m, (s[0] * s[1]).order()});
    r.checks.push_back({"order(b^2) = m", m, b.pow(2).order()});
    r.checks.push_back({"order(c^2) = m", m, c.pow(2).order()});
    r.checks.push_back({"order(d^2) = m", m, d.pow(2).order()});
    r.checks.push_back({"|H| = m^3", ipow(m, 3), h.order()});
    r.checks.push_back({"H abelian", 1, flag(h.is_abelian())});
    r.checks.push_back({"K = <s0, b, c>", r.kernel_order, is_subgroup(k_group, abc) ? abc.order() : 0});
    r.checks.push_back({"d = s0 b s0 c", 1, flag(d == s[0] * b * s[0] * c)});
    const bool h_in_k = is_subgroup(k_group, h);
    r.checks.push_back({"H normal in K", 1, flag(h_in_k && is_normal(k_group, h))});
    r.checks.push_back({"|K/H| = 8", 8, r.kernel_order / h.order()});

    auto elements = k_group.elements(budget);
    std::uint64_t squares = 0;
    for (const auto& x : elements.elements)
        squares += flag(h.contains(x * x));
    r.checks.push_back({"every element of K squares into H", elements.elements.size(), squares});

    r.subgroups.emplace_back("H", h.order());
    r.subgroups.emplace_back("K/H", r.kernel_order / h.order());
    r.subgroups.emplace_back("M/K", r.monodromy_order / r.kernel_order);
    r.splits.push_back(decide_split(k_group, h, 8, budget, "K over H"));
    r.splits.push_back(decide_split(m_group, k_group, 6, budget, "M over K"));
    return r;
}

auto pyramid_structure(int p, std::size_t budget) -> ExtensionReport
{
    if (p < 3)
        throw Error(ErrorCode::ParameterOutOfRange, "pyramid_structure needs p >= 3");
    auto prod = product_many(ProductKind::Join, {point(), gon(p)});
    auto proj = projection(prod.polytope, prod.structure);
    ExtensionReport& r = proj.report;
    const auto& s = proj.monodromy.gens.r;
    const std::uint64_t m = static_cast<std::uint64_t>(p / std::gcd(p, 3));

    // p_j is the order of r_j r_{j+1} in M(gon(p)); missing generators count as 1.
    auto base = monodromy_generators(gon(p));
    auto p_of = [&](int j) -> std::uint64_t {
        if (j < 0 || j + 1 >= static_cast<int>(base.r.size()))
            return 1;
        return (base.r[j] * base.r[j + 1]).order();
    };
    r.checks.push_back({"|M| = 24 m^4", 24 * ipow(m, 4), r.monodromy_order});
    r.checks.push_back({"|K| = m^4", ipow(m, 4), r.kernel_order});
    r.checks.push_back({"K abelian", 1, flag(proj.kernel.is_abelian())});
    bool exponent_m = std::all_of(proj.kernel.generators().begin(), proj.kernel.generators().end(),
        [&](const Permutation& x) { return x.pow(static_cast<long long>(m)).is_identity(); });
    r.checks.push_back({"K has exponent dividing m", 1, flag(exponent_m)});
    for (int i = 0; i + 1 < static_cast<int>(s.size()); ++i) {
        std::uint64_t expected = std::lcm(std::lcm(std::uint64_t{3}, p_of(i - 1)), p_of(i));
        r.checks.push_back({"order(s" + std::to_string(i) + " s" + std::to_string(i + 1) + ") = lcm(3, p_" +
                                std::to_string(i - 1) + ", p_" + std::to_string(i) + ")",
            expected, (s[i] * s[i + 1]).order()});
    }
    r.subgroups.emplace_back("M/K", r.monodromy_order / r.kernel_order);
    r.splits.push_back(decide_split(proj.monodromy.group, proj.kernel, 24, budget, "M over K"));
    return r;
}

auto topo_polygons_structure(const std::vector<int>& ps) -> ExtensionReport
{
    const int r_count = static_cast<int>(ps.size());
    if (r_count < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "topo_polygons_structure needs at least two polygons");
    std::vector<Polytope> gons;
    std::uint64_t lcm = 1, flags = 1;
    for (int p : ps) {
        if (p < 2)
            throw Error(ErrorCode::ParameterOutOfRange, "polygon parameters must be at least 2");
        gons.push_back(gon(p));
        lcm = std::lcm(lcm, static_cast<std::uint64_t>(p));
        flags *= 2 * static_cast<std::uint64_t>(p);
    }
    if (flags * factorial(r_count) > 10'000)
        throw Error(ErrorCode::ParameterOutOfRange, "topological product has more than 10^4 flags");

    auto prod = product_many(ProductKind::Topological, gons);
    auto proj = projection(prod.polytope, prod.structure);
    ExtensionReport& r = proj.report;
    const auto& s = proj.monodromy.gens.r;
    const int deg = proj.monodromy.gens.degree;
    const Permutation id(deg);

    // Coordinate k (1-based position): s_0 and s_r conjugated so that they act
    // on the factor at position k.
    std::vector<std::vector<Permutation>> coordinate;
    std::vector<Permutation> all;
    for (int k = 1; k <= r_count; ++k) {
        Permutation u = id, v = id;
        for (int i = k - 1; i >= 1; --i)
            u = u * s[i];
        for (int i = k; i <= r_count - 1; ++i)
            v = v * s[i];
        std::vector<Permutation> gens{u * s[0] * u.inverse(), v * s[r_count] * v.inverse()};
        all.insert(all.end(), gens.begin(), gens.end());
        coordinate.push_back(std::move(gens));
    }

    r.checks.push_back({"|M| = (2 lcm)^r r!", ipow(2 * lcm, r_count) * factorial(r_count), r.monodromy_order});
    r.checks.push_back({"|K| = (2 lcm)^r", ipow(2 * lcm, r_count), r.kernel_order});
    for (int k = 0; k < r_count; ++k) {
        PermGroup dk(deg, coordinate[k]);
        r.subgroups.emplace_back("D_" + std::to_string(k + 1), dk.order());
        r.checks.push_back({"|D_" + std::to_string(k + 1) + "| = 2 lcm", 2 * lcm, dk.order()});
    }
    std::uint64_t pairs = 0, commuting = 0;
    for (int k = 0; k < r_count; ++k)
        for (int l = k + 1; l < r_count; ++l)
            for (const auto& x : coordinate[k])
                for (const auto& y : coordinate[l]) {
                    ++pairs;
                    commuting += flag(x * y == y * x);
                }
    r.checks.push_back({"coordinate subgroups commute", pairs, commuting});
    PermGroup generated(deg, all);
    r.checks.push_back({"coordinate subgroups generate K", r.kernel_order,
        is_subgroup(proj.kernel, generated) ? generated.order() : 0});
    r.subgroups.emplace_back("M/K", r.monodromy_order / r.kernel_order);
    return r;
}

auto prism_over_structure(const Polytope& q, std::size_t budget) -> ExtensionReport
{
    auto prod = product_many(ProductKind::Cartesian, {edge(), q});
    auto proj = projection(prod.polytope, prod.structure);
    ExtensionReport& r = proj.report;
    r.subgroups.emplace_back("M/K", r.monodromy_order / r.kernel_order);
    const std::uint64_t target = factorial(r.n);

    // The generators with nontrivial image already map onto S_n; if they
    // generate a group of order n! it meets K trivially.
    std::vector<Permutation> moving;
    for (std::size_t k = 0; k < proj.embedding.generators.size(); ++k)
        if (! proj.embedding.generators[k].top.is_identity())
            moving.push_back(proj.monodromy.gens.r[k]);
    auto c = closure_order(proj.monodromy.gens.degree, moving, static_cast<std::size_t>(target));
    if (c && *c == target)
        r.splits.push_back({"M over K", target, SplitVerdict::Split, moving});
    else
        r.splits.push_back(decide_split(proj.monodromy.group, proj.kernel, target, budget, "M over K"));
    return r;
}

} // namespace polyprod
