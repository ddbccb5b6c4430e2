#include <polyprod/error.hpp>
#include <polyprod/permgroup.hpp>

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <unordered_set>

namespace polyprod {

Permutation::Permutation(int degree) : images_(degree)
{
    std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images))
{
    std::vector<char> hit(images_.size(), 0);
    for (int x : images_) {
        if (x < 0 || x >= degree() || hit[x])
            throw Error(ErrorCode::InvalidInput, "images do not form a permutation");
        hit[x] = 1;
    }
}

auto Permutation::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) -> Permutation
{
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 0);
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            images.at(c[i]) = c[(i + 1) % c.size()];
    return Permutation(std::move(images));
}

auto Permutation::is_identity() const -> bool
{
    for (int i = 0; i < degree(); ++i)
        if (images_[i] != i)
            return false;
    return true;
}

auto Permutation::inverse() const -> Permutation
{
    Permutation r;
    r.images_.resize(images_.size());
    for (int i = 0; i < degree(); ++i)
        r.images_[images_[i]] = i;
    return r;
}

auto Permutation::order() const -> std::uint64_t
{
    std::vector<char> seen(degree(), 0);
    std::uint64_t result = 1;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i])
            continue;
        std::uint64_t len = 0;
        for (int j = i; ! seen[j]; j = images_[j]) {
            seen[j] = 1;
            ++len;
        }
        result = std::lcm(result, len);
    }
    return result;
}

auto Permutation::pow(long long e) const -> Permutation
{
    Permutation base = e < 0 ? inverse() : *this;
    if (e < 0)
        e = -e;
    Permutation result(degree());
    while (e > 0) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

auto Permutation::first_moved() const -> int
{
    for (int i = 0; i < degree(); ++i)
        if (images_[i] != i)
            return i;
    return -1;
}

auto operator*(const Permutation& a, const Permutation& b) -> Permutation
{
    Permutation r;
    r.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i)
        r.images_[i] = b.images_[a.images_[i]];
    return r;
}

auto PermutationHash::operator()(const Permutation& p) const -> std::size_t
{
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) {
        h ^= static_cast<std::size_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// One level of the stabiliser chain. Transversals are kept as a Schreier
// vector: label[q] is the generator that first reached q, -1 off the orbit.
struct Level {
    int base = -1;
    std::vector<Permutation> gens;
    std::vector<Permutation> gens_inv;
    std::vector<int> orbit;
    std::vector<int> label;

    // h * u^-1 where u is the transversal element sending base to h[base].
    auto strip(Permutation h) const -> Permutation
    {
        for (int g = h[base]; g != base; g = h[base])
            h = h * gens_inv[label[g]];
        return h;
    }

    auto in_orbit(int q) const -> bool { return label[q] != -1; }

    auto transversal(int q) const -> Permutation
    {
        std::vector<int> path;
        while (q != base) {
            path.push_back(label[q]);
            q = gens_inv[label[q]][q];
        }
        Permutation u(static_cast<int>(label.size()));
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            u = u * gens[*it];
        return u;
    }
};

constexpr int base_label = -2;

class ChainBuilder {
public:
    ChainBuilder(int degree, const std::vector<Permutation>& gens, const std::vector<int>& prefix,
        std::uint64_t known_order = 0)
        : degree_(degree), known_order_(known_order)
    {
        std::vector<Permutation> nontrivial;
        for (const auto& g : gens)
            if (! g.is_identity())
                nontrivial.push_back(g);
        std::vector<int> base = prefix;
        for (const auto& g : nontrivial) {
            bool fixes_all = std::all_of(base.begin(), base.end(), [&](int b) { return g[b] == b; });
            if (fixes_all)
                base.push_back(g.first_moved());
        }
        for (std::size_t i = 0; i < base.size(); ++i) {
            Level lv;
            lv.base = base[i];
            for (const auto& g : nontrivial) {
                bool fixes_prev = true;
                for (std::size_t j = 0; j < i; ++j)
                    fixes_prev = fixes_prev && g[base[j]] == base[j];
                if (fixes_prev)
                    add_gen(lv, g);
            }
            levels_.push_back(std::move(lv));
            rebuild_orbit(i);
        }
        run();
    }

    auto take() -> std::vector<Level> { return std::move(levels_); }

private:
    static auto add_gen(Level& lv, const Permutation& g) -> void
    {
        lv.gens.push_back(g);
        lv.gens_inv.push_back(g.inverse());
    }

    auto rebuild_orbit(std::size_t i) -> void
    {
        Level& lv = levels_[i];
        lv.orbit.assign(1, lv.base);
        lv.label.assign(degree_, -1);
        lv.label[lv.base] = base_label;
        for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
            int p = lv.orbit[k];
            for (std::size_t s = 0; s < lv.gens.size(); ++s) {
                int q = lv.gens[s][p];
                if (lv.label[q] != -1)
                    continue;
                lv.label[q] = static_cast<int>(s);
                lv.orbit.push_back(q);
            }
        }
    }

    // Sifts h through levels from..; returns the level where it stopped.
    auto sift(Permutation& h, std::size_t from) const -> std::size_t
    {
        for (std::size_t l = from; l < levels_.size(); ++l) {
            if (! levels_[l].in_orbit(h[levels_[l].base]))
                return l;
            h = levels_[l].strip(std::move(h));
        }
        return levels_.size();
    }

    auto complete_by_order() const -> bool
    {
        if (known_order_ == 0)
            return false;
        std::uint64_t order = 1;
        for (const auto& lv : levels_)
            if (__builtin_mul_overflow(order, static_cast<std::uint64_t>(lv.orbit.size()), &order))
                return false;
        return order == known_order_;
    }

    auto run() -> void
    {
        if (levels_.empty() || complete_by_order())
            return;
        std::size_t i = levels_.size() - 1;
        while (true) {
            bool changed = false;
            for (std::size_t k = 0; ! changed && k < levels_[i].orbit.size(); ++k) {
                Permutation u = levels_[i].transversal(levels_[i].orbit[k]);
                for (std::size_t s = 0; ! changed && s < levels_[i].gens.size(); ++s) {
                    Permutation h = levels_[i].strip(u * levels_[i].gens[s]);
                    if (h.is_identity())
                        continue;
                    std::size_t j = sift(h, i + 1);
                    if (j == levels_.size()) {
                        if (h.is_identity())
                            continue;
                        Level fresh;
                        fresh.base = h.first_moved();
                        levels_.push_back(std::move(fresh));
                    }
                    for (std::size_t l = i + 1; l <= j; ++l) {
                        add_gen(levels_[l], h);
                        rebuild_orbit(l);
                    }
                    if (complete_by_order())
                        return;
                    i = j;
                    changed = true;
                }
            }
            if (changed)
                continue;
            if (i == 0)
                break;
            --i;
        }
    }

    int degree_;
    std::uint64_t known_order_;
    std::vector<Level> levels_;
};

} // namespace

struct PermGroup::Chain {
    std::once_flag once;
    std::vector<Level> levels;
};

PermGroup::PermGroup(int degree, std::vector<Permutation> generators, std::uint64_t known_order)
    : degree_(degree), generators_(std::move(generators)), known_order_(known_order), chain_(std::make_shared<Chain>())
{
    for (const auto& g : generators_)
        if (g.degree() != degree_)
            throw Error(ErrorCode::DegreeMismatch, "generator degree differs from group degree");
}

auto PermGroup::chain() const -> const Chain&
{
    std::call_once(chain_->once, [this] { chain_->levels = ChainBuilder(degree_, generators_, {}, known_order_).take(); });
    return *chain_;
}

namespace {

auto chain_order(const std::vector<Level>& levels, std::size_t from = 0) -> std::uint64_t
{
    std::uint64_t order = 1;
    for (std::size_t l = from; l < levels.size(); ++l)
        if (__builtin_mul_overflow(order, static_cast<std::uint64_t>(levels[l].orbit.size()), &order))
            throw Error(ErrorCode::InvalidInput, "group order exceeds 64 bits");
    return order;
}

auto sifts_to_identity(const std::vector<Level>& levels, Permutation h) -> bool
{
    for (const auto& lv : levels) {
        if (! lv.in_orbit(h[lv.base]))
            return false;
        h = lv.strip(std::move(h));
    }
    return h.is_identity();
}

} // namespace

auto PermGroup::order() const -> std::uint64_t
{
    return chain_order(chain().levels);
}

auto PermGroup::contains(const Permutation& x) const -> bool
{
    if (x.degree() != degree_)
        throw Error(ErrorCode::DegreeMismatch, "element degree differs from group degree");
    return sifts_to_identity(chain().levels, x);
}

auto PermGroup::orbit(int point) const -> std::vector<int>
{
    std::vector<char> seen(degree_, 0);
    std::vector<int> out{point};
    seen[point] = 1;
    for (std::size_t k = 0; k < out.size(); ++k)
        for (const auto& g : generators_) {
            int q = g[out[k]];
            if (! seen[q]) {
                seen[q] = 1;
                out.push_back(q);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

auto PermGroup::orbits() const -> std::vector<std::vector<int>>
{
    std::vector<char> seen(degree_, 0);
    std::vector<std::vector<int>> out;
    for (int p = 0; p < degree_; ++p) {
        if (seen[p])
            continue;
        auto o = orbit(p);
        for (int q : o)
            seen[q] = 1;
        out.push_back(std::move(o));
    }
    return out;
}

auto PermGroup::stabilizer(int point) const -> PermGroup
{
    auto levels = ChainBuilder(degree_, generators_, {point}).take();
    std::vector<Permutation> gens;
    if (levels.size() > 1)
        gens = levels[1].gens;
    return PermGroup(degree_, std::move(gens));
}

auto PermGroup::base() const -> std::vector<int>
{
    std::vector<int> out;
    for (const auto& lv : chain().levels)
        out.push_back(lv.base);
    return out;
}

auto PermGroup::strong_generators() const -> std::vector<Permutation>
{
    std::vector<Permutation> out;
    for (const auto& lv : chain().levels)
        for (const auto& g : lv.gens)
            if (std::find(out.begin(), out.end(), g) == out.end())
                out.push_back(g);
    return out;
}

auto PermGroup::is_abelian() const -> bool
{
    for (std::size_t i = 0; i < generators_.size(); ++i)
        for (std::size_t j = i + 1; j < generators_.size(); ++j)
            if (generators_[i] * generators_[j] != generators_[j] * generators_[i])
                return false;
    return true;
}

auto PermGroup::elements(std::size_t budget) const -> Enumeration
{
    Enumeration out;
    std::unordered_set<Permutation, PermutationHash> seen;
    Permutation id(degree_);
    seen.insert(id);
    out.elements.push_back(id);
    for (std::size_t k = 0; k < out.elements.size(); ++k)
        for (const auto& g : generators_) {
            Permutation y = out.elements[k] * g;
            if (seen.insert(y).second) {
                if (out.elements.size() >= budget)
                    return out;
                out.elements.push_back(std::move(y));
            }
        }
    out.complete = true;
    return out;
}

auto is_subgroup(const PermGroup& g, const PermGroup& sub) -> bool
{
    if (g.degree() != sub.degree())
        return false;
    return std::all_of(sub.generators().begin(), sub.generators().end(), [&](const Permutation& x) { return g.contains(x); });
}

auto is_normal(const PermGroup& g, const PermGroup& sub) -> bool
{
    if (! is_subgroup(g, sub))
        throw Error(ErrorCode::NotASubgroup, "subgroup generators are not in the group");
    for (const auto& x : g.generators()) {
        auto xi = x.inverse();
        for (const auto& h : sub.generators())
            if (! sub.contains(xi * h * x))
                return false;
    }
    return true;
}

auto kernel_of_action(const PermGroup& g, const std::vector<Permutation>& images) -> PermGroup
{
    if (images.size() != g.generators().size())
        throw Error(ErrorCode::InvalidInput, "one image per generator is required");
    const int m = images.empty() ? 0 : images.front().degree();
    const int d = g.degree();
    // Act on the m action points followed by the d original points; with the
    // action points as a base prefix, the stabiliser of the prefix is the kernel.
    std::vector<Permutation> combined;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].degree() != m)
            throw Error(ErrorCode::DegreeMismatch, "action images must share a degree");
        std::vector<int> im(m + d);
        for (int p = 0; p < m; ++p)
            im[p] = images[i][p];
        for (int p = 0; p < d; ++p)
            im[m + p] = m + g.generators()[i][p];
        combined.emplace_back(std::move(im));
    }
    std::vector<int> prefix(m);
    std::iota(prefix.begin(), prefix.end(), 0);
    auto levels = ChainBuilder(m + d, combined, prefix).take();
    std::vector<Permutation> gens;
    if (levels.size() > static_cast<std::size_t>(m))
        for (const auto& h : levels[m].gens) {
            std::vector<int> im(d);
            for (int p = 0; p < d; ++p)
                im[p] = h[m + p] - m;
            gens.emplace_back(std::move(im));
        }
    return PermGroup(d, std::move(gens));
}

auto closure_order(int degree, const std::vector<Permutation>& gens, std::size_t cap) -> std::optional<std::size_t>
{
    std::unordered_set<Permutation, PermutationHash> seen;
    std::vector<Permutation> list{Permutation(degree)};
    seen.insert(list.front());
    for (std::size_t k = 0; k < list.size(); ++k)
        for (const auto& g : gens) {
            Permutation y = list[k] * g;
            if (seen.insert(y).second) {
                if (list.size() >= cap)
                    return std::nullopt;
                list.push_back(std::move(y));
            }
        }
    return list.size();
}

auto find_complement(const PermGroup& g, const PermGroup& k, std::uint64_t target_order, std::size_t budget)
    -> std::optional<PermGroup>
{
    if (! is_subgroup(g, k))
        throw Error(ErrorCode::NotASubgroup, "k is not contained in g");
    if (g.order() != k.order() * target_order)
        throw Error(ErrorCode::InvalidInput, "|g| must equal |k| times the target order");
    const int d = g.degree();
    if (target_order == 1)
        return PermGroup(d, {});

    auto en = g.elements(budget);
    if (! en.complete)
        throw Error(ErrorCode::SearchBudgetExceeded, "element enumeration exceeded the budget");
    const auto& elems = en.elements;

    // Coset of k for every enumerated element, numbered by first appearance.
    std::vector<Permutation> reps, reps_inv;
    std::vector<int> coset(elems.size());
    for (std::size_t e = 0; e < elems.size(); ++e) {
        int found = -1;
        for (std::size_t c = 0; c < reps.size() && found < 0; ++c)
            if (k.contains(elems[e] * reps_inv[c]))
                found = static_cast<int>(c);
        if (found < 0) {
            found = static_cast<int>(reps.size());
            reps.push_back(elems[e]);
            reps_inv.push_back(elems[e].inverse());
        }
        coset[e] = found;
    }
    const int q = static_cast<int>(reps.size());
    auto coset_of = [&](const Permutation& x) {
        for (int c = 0; c < q; ++c)
            if (k.contains(x * reps_inv[c]))
                return c;
        return -1;
    };
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[a][b] = coset_of(reps[a] * reps[b]);

    auto quotient_closure = [&](const std::vector<int>& gens) {
        std::vector<int> list{0};
        std::vector<char> in(q, 0);
        in[0] = 1;
        for (std::size_t i = 0; i < list.size(); ++i)
            for (int s : gens) {
                int y = table[list[i]][s];
                if (y >= 0 && ! in[y]) {
                    in[y] = 1;
                    list.push_back(y);
                }
            }
        return list;
    };

    // Greedy generating set of the quotient in order of first appearance.
    std::vector<int> qgens;
    std::vector<std::size_t> prefix_orders;
    auto current = quotient_closure(qgens);
    for (int c = 1; c < q && current.size() < static_cast<std::size_t>(q); ++c)
        if (std::find(current.begin(), current.end(), c) == current.end()) {
            qgens.push_back(c);
            current = quotient_closure(qgens);
            prefix_orders.push_back(current.size());
        }

    auto coset_order = [&](int c) {
        std::size_t n = 1;
        for (int x = c; x != 0; x = table[x][c])
            ++n;
        return n;
    };

    std::vector<std::vector<const Permutation*>> candidates(qgens.size());
    for (std::size_t i = 0; i < qgens.size(); ++i) {
        std::size_t want = coset_order(qgens[i]);
        for (std::size_t e = 0; e < elems.size(); ++e)
            if (coset[e] == qgens[i] && elems[e].order() == want)
                candidates[i].push_back(&elems[e]);
    }

    std::vector<Permutation> chosen;
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        if (i == qgens.size())
            return true;
        for (const Permutation* c : candidates[i]) {
            chosen.push_back(*c);
            auto ord = closure_order(d, chosen, prefix_orders[i] + 1);
            if (ord && *ord == prefix_orders[i] && search(i + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (search(0))
        return PermGroup(d, chosen);
    return std::nullopt;
}

} // namespace polyprod
