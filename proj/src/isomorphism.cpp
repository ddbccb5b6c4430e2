#include <polyprod/polytope.hpp>

#include <algorithm>
#include <map>
#include <tuple>

namespace polyprod {

auto refine_colours(const std::vector<const FacePoset*>& posets) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> colour(posets.size());
    std::map<std::tuple<int, int, int>, int> initial;
    for (const auto* p : posets)
        for (FaceId f = 0; f < p->size(); ++f)
            initial.emplace(std::tuple{p->rank(f), static_cast<int>(p->upper_covers(f).size()),
                                static_cast<int>(p->lower_covers(f).size())},
                0);
    int next = 0;
    for (auto& [key, id] : initial)
        id = next++;
    for (std::size_t k = 0; k < posets.size(); ++k) {
        const auto* p = posets[k];
        colour[k].resize(p->size());
        for (FaceId f = 0; f < p->size(); ++f)
            colour[k][f] = initial[{p->rank(f), static_cast<int>(p->upper_covers(f).size()),
                static_cast<int>(p->lower_covers(f).size())}];
    }

    int classes = next;
    while (true) {
        std::map<std::vector<int>, int> sigs;
        std::vector<std::vector<std::vector<int>>> keyed(posets.size());
        for (std::size_t k = 0; k < posets.size(); ++k) {
            const auto* p = posets[k];
            keyed[k].resize(p->size());
            for (FaceId f = 0; f < p->size(); ++f) {
                std::vector<int> sig{colour[k][f]};
                std::vector<int> ups, downs;
                for (FaceId g : p->upper_covers(f))
                    ups.push_back(colour[k][g]);
                for (FaceId g : p->lower_covers(f))
                    downs.push_back(colour[k][g]);
                std::sort(ups.begin(), ups.end());
                std::sort(downs.begin(), downs.end());
                sig.insert(sig.end(), ups.begin(), ups.end());
                sig.push_back(-1);
                sig.insert(sig.end(), downs.begin(), downs.end());
                sigs.emplace(sig, 0);
                keyed[k][f] = std::move(sig);
            }
        }
        int id = 0;
        for (auto& [sig, c] : sigs)
            c = id++;
        for (std::size_t k = 0; k < posets.size(); ++k)
            for (FaceId f = 0; f < posets[k]->size(); ++f)
                colour[k][f] = sigs[keyed[k][f]];
        if (id == classes)
            break;
        classes = id;
    }
    return colour;
}

auto is_isomorphism(const FacePoset& a, const FacePoset& b, const std::vector<FaceId>& map) -> bool
{
    if (a.size() != b.size() || static_cast<int>(map.size()) != a.size() || a.cover_count() != b.cover_count())
        return false;
    std::vector<char> hit(b.size(), 0);
    for (FaceId f = 0; f < a.size(); ++f) {
        FaceId g = map[f];
        if (g < 0 || g >= b.size() || hit[g] || a.rank(f) != b.rank(g))
            return false;
        hit[g] = 1;
    }
    for (auto [u, l] : a.covers()) {
        const auto& down = b.lower_covers(map[u]);
        if (! std::binary_search(down.begin(), down.end(), map[l]))
            return false;
    }
    return true;
}

namespace {

class Matcher {
public:
    Matcher(const FacePoset& a, const FacePoset& b, std::vector<int> ca, std::vector<int> cb)
        : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)), fwd_(a.size(), -1), bwd_(b.size(), -1)
    {
        build_order();
    }

    auto run() -> std::optional<std::vector<FaceId>>
    {
        if (extend(0))
            return fwd_;
        return std::nullopt;
    }

private:
    auto build_order() -> void
    {
        const int n = a_.size();
        std::map<int, int> class_size;
        for (int c : ca_)
            ++class_size[c];
        std::vector<int> linked(n, 0);
        std::vector<char> placed(n, 0);
        for (int step = 0; step < n; ++step) {
            FaceId best = -1;
            for (FaceId f = 0; f < n; ++f) {
                if (placed[f])
                    continue;
                if (best < 0)
                    best = f;
                else if (std::tuple{-linked[f], class_size[ca_[f]], a_.rank(f), f}
                    < std::tuple{-linked[best], class_size[ca_[best]], a_.rank(best), best})
                    best = f;
            }
            placed[best] = 1;
            order_.push_back(best);
            for (const auto* nbrs : {&a_.upper_covers(best), &a_.lower_covers(best)})
                for (FaceId g : *nbrs)
                    ++linked[g];
        }
    }

    auto mapped_neighbours(const FacePoset& p, const std::vector<FaceId>& m, FaceId f) const -> int
    {
        int c = 0;
        for (const auto* nbrs : {&p.upper_covers(f), &p.lower_covers(f)})
            for (FaceId g : *nbrs)
                if (m[g] >= 0)
                    ++c;
        return c;
    }

    auto consistent(FaceId x, FaceId y) const -> bool
    {
        if (ca_[x] != cb_[y] || bwd_[y] >= 0)
            return false;
        for (FaceId u : a_.upper_covers(x))
            if (fwd_[u] >= 0 && ! std::binary_search(b_.upper_covers(y).begin(), b_.upper_covers(y).end(), fwd_[u]))
                return false;
        for (FaceId l : a_.lower_covers(x))
            if (fwd_[l] >= 0 && ! std::binary_search(b_.lower_covers(y).begin(), b_.lower_covers(y).end(), fwd_[l]))
                return false;
        return mapped_neighbours(a_, fwd_, x) == mapped_neighbours(b_, bwd_, y);
    }

    auto extend(std::size_t pos) -> bool
    {
        if (pos == order_.size())
            return true;
        FaceId x = order_[pos];

        // Candidates come from the neighbourhood of an already mapped neighbour.
        const std::vector<FaceId>* pool = nullptr;
        for (FaceId l : a_.lower_covers(x))
            if (fwd_[l] >= 0) {
                const auto* cand = &b_.upper_covers(fwd_[l]);
                if (! pool || cand->size() < pool->size())
                    pool = cand;
            }
        for (FaceId u : a_.upper_covers(x))
            if (fwd_[u] >= 0) {
                const auto* cand = &b_.lower_covers(fwd_[u]);
                if (! pool || cand->size() < pool->size())
                    pool = cand;
            }

        auto attempt = [&](FaceId y) {
            if (! consistent(x, y))
                return false;
            fwd_[x] = y;
            bwd_[y] = x;
            if (extend(pos + 1))
                return true;
            fwd_[x] = -1;
            bwd_[y] = -1;
            return false;
        };
        if (pool) {
            for (FaceId y : *pool)
                if (attempt(y))
                    return true;
        }
        else {
            for (FaceId y = 0; y < b_.size(); ++y)
                if (attempt(y))
                    return true;
        }
        return false;
    }

    const FacePoset& a_;
    const FacePoset& b_;
    std::vector<int> ca_, cb_;
    std::vector<FaceId> fwd_, bwd_;
    std::vector<FaceId> order_;
};

} // namespace

auto is_isomorphic(const FacePoset& a, const FacePoset& b) -> std::optional<std::vector<FaceId>>
{
    if (a.size() != b.size() || a.cover_count() != b.cover_count())
        return std::nullopt;
    auto ra = a.ranks(), rb = b.ranks();
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    if (ra != rb)
        return std::nullopt;

    auto colours = refine_colours({&a, &b});
    auto ha = colours[0], hb = colours[1];
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb)
        return std::nullopt;

    Matcher m(a, b, std::move(colours[0]), std::move(colours[1]));
    return m.run();
}

auto is_isomorphic(const Polytope& a, const Polytope& b) -> std::optional<std::vector<FaceId>>
{
    return is_isomorphic(a.poset(), b.poset());
}

auto canonical_form(const Polytope& p) -> CanonicalForm
{
    const FlagSet& fs = p.flag_set();
    const int nf = fs.size();
    const int n = std::max(p.rank(), 0);

    // Breadth-first numbering of the flag graph from `base`; stops early once
    // the partial code exceeds `bound`.
    std::vector<int> order, number(nf), code;
    auto encode = [&](int base, const std::vector<int>* bound) {
        std::fill(number.begin(), number.end(), -1);
        order.assign(1, base);
        number[base] = 0;
        code.clear();
        bool smaller = false;
        for (std::size_t k = 0; k < order.size(); ++k)
            for (int i = 0; i < n; ++i) {
                int g = fs.adjacent(order[k], i);
                if (number[g] < 0) {
                    number[g] = static_cast<int>(order.size());
                    order.push_back(g);
                }
                code.push_back(number[g]);
                if (bound && ! smaller) {
                    int b = (*bound)[code.size() - 1];
                    if (code.back() > b)
                        return false;
                    smaller = code.back() < b;
                }
            }
        return ! bound || smaller;
    };

    int best = 0;
    encode(0, nullptr);
    std::vector<int> best_code = code;
    for (int b = 1; b < nf; ++b)
        if (encode(b, &best_code)) {
            best = b;
            best_code = code;
        }
    encode(best, nullptr);

    CanonicalForm out;
    out.map.assign(p.size(), -1);
    int next = 0;
    for (int f : order)
        for (FaceId x : fs.flag(f))
            if (out.map[x] < 0)
                out.map[x] = next++;
    std::vector<int> ranks(p.size());
    std::vector<Cover> covers;
    for (FaceId x = 0; x < p.size(); ++x) {
        ranks[out.map[x]] = p.poset().rank(x);
        for (FaceId y : p.poset().lower_covers(x))
            covers.emplace_back(out.map[x], out.map[y]);
    }
    out.poset = build_poset(std::move(ranks), std::move(covers));
    out.code = std::move(best_code);
    return out;
}

} // namespace polyprod
