#include <polyprod/error.hpp>
#include <polyprod/face_poset.hpp>

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <string>

namespace polyprod {

auto error_code_name(ErrorCode code) -> std::string_view
{
    switch (code) {
    case ErrorCode::DanglingId: return "DanglingId";
    case ErrorCode::NonHasseCover: return "NonHasseCover";
    case ErrorCode::CyclicCovers: return "CyclicCovers";
    case ErrorCode::NotAPolytope: return "NotAPolytope";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::AlreadyBounded: return "AlreadyBounded";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::TopologicalRankTooLow: return "TopologicalRankTooLow";
    case ErrorCode::EmptyOperand: return "EmptyOperand";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::RebuildMismatch: return "RebuildMismatch";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::FlagNotOfProduct: return "FlagNotOfProduct";
    case ErrorCode::EmbeddingMismatch: return "EmbeddingMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

auto build_poset(std::vector<int> ranks, std::vector<Cover> covers) -> FacePoset
{
    const int n = static_cast<int>(ranks.size());
    for (auto [u, l] : covers) {
        if (u < 0 || u >= n || l < 0 || l >= n)
            throw Error(ErrorCode::DanglingId, "cover (" + std::to_string(u) + "," + std::to_string(l) + ")");
        // A rank step of exactly one also rules out cycles.
        if (ranks[u] != ranks[l] + 1)
            throw Error(ErrorCode::NonHasseCover, "cover (" + std::to_string(u) + "," + std::to_string(l) + ")");
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

    FacePoset p;
    p.ranks_ = std::move(ranks);
    p.up_.assign(n, {});
    p.down_.assign(n, {});
    for (auto [u, l] : covers) {
        p.down_[u].push_back(l);
        p.up_[l].push_back(u);
    }
    for (auto& v : p.up_)
        std::sort(v.begin(), v.end());
    return p;
}

auto FacePoset::covers() const -> std::vector<Cover>
{
    std::vector<Cover> out;
    out.reserve(cover_count());
    for (FaceId u = 0; u < size(); ++u)
        for (FaceId l : down_[u])
            out.emplace_back(u, l);
    return out;
}

auto FacePoset::cover_count() const -> std::size_t
{
    std::size_t c = 0;
    for (const auto& d : down_)
        c += d.size();
    return c;
}

auto FacePoset::min_rank() const -> int
{
    return ranks_.empty() ? 0 : *std::min_element(ranks_.begin(), ranks_.end());
}

auto FacePoset::max_rank() const -> int
{
    return ranks_.empty() ? -1 : *std::max_element(ranks_.begin(), ranks_.end());
}

auto FacePoset::faces_of_rank(int r) const -> std::vector<FaceId>
{
    std::vector<FaceId> out;
    for (FaceId f = 0; f < size(); ++f)
        if (ranks_[f] == r)
            out.push_back(f);
    return out;
}

auto FacePoset::minimal_faces() const -> std::vector<FaceId>
{
    std::vector<FaceId> out;
    for (FaceId f = 0; f < size(); ++f)
        if (down_[f].empty())
            out.push_back(f);
    return out;
}

auto FacePoset::maximal_faces() const -> std::vector<FaceId>
{
    std::vector<FaceId> out;
    for (FaceId f = 0; f < size(); ++f)
        if (up_[f].empty())
            out.push_back(f);
    return out;
}

auto FacePoset::is_connected() const -> bool
{
    if (size() == 0)
        return true;
    std::vector<char> seen(size(), 0);
    std::vector<FaceId> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (! stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (const auto* nbrs : {&up_[f], &down_[f]})
            for (FaceId g : *nbrs)
                if (! seen[g]) {
                    seen[g] = 1;
                    ++reached;
                    stack.push_back(g);
                }
    }
    return reached == size();
}

auto FacePoset::leq(FaceId a, FaceId b) const -> bool
{
    if (a == b)
        return true;
    if (ranks_[a] >= ranks_[b])
        return false;
    std::vector<char> seen(size(), 0);
    std::vector<FaceId> stack{b};
    while (! stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (FaceId g : down_[f]) {
            if (g == a)
                return true;
            if (! seen[g] && ranks_[g] > ranks_[a]) {
                seen[g] = 1;
                stack.push_back(g);
            }
        }
    }
    return false;
}

auto dual(const FacePoset& p) -> FacePoset
{
    const int lo = p.min_rank(), hi = p.max_rank();
    std::vector<int> ranks(p.size());
    for (FaceId f = 0; f < p.size(); ++f)
        ranks[f] = lo + hi - p.rank(f);
    std::vector<Cover> covers;
    for (auto [u, l] : p.covers())
        covers.emplace_back(l, u);
    return build_poset(std::move(ranks), std::move(covers));
}

auto induced(const FacePoset& p, const std::vector<FaceId>& keep) -> FacePoset
{
    std::vector<int> index(p.size(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i)
        index[keep[i]] = i;
    std::vector<int> ranks;
    ranks.reserve(keep.size());
    std::vector<Cover> covers;
    for (FaceId f : keep) {
        ranks.push_back(p.rank(f));
        for (FaceId l : p.lower_covers(f))
            if (index[l] >= 0)
                covers.emplace_back(index[f], index[l]);
    }
    return build_poset(std::move(ranks), std::move(covers));
}

auto shift_ranks(const FacePoset& p, int delta) -> FacePoset
{
    std::vector<int> ranks = p.ranks();
    for (auto& r : ranks)
        r += delta;
    return build_poset(std::move(ranks), p.covers());
}

auto cap(const FacePoset& p, Ends ends) -> FacePoset
{
    if (p.size() == 0)
        throw Error(ErrorCode::InvalidInput, "cannot cap an empty poset");
    const bool add_min = ends == Ends::Min || ends == Ends::Both;
    const bool add_max = ends == Ends::Max || ends == Ends::Both;
    auto mins = p.minimal_faces();
    auto maxs = p.maximal_faces();
    if (add_min && mins.size() == 1)
        throw Error(ErrorCode::AlreadyBounded, "poset already has a minimum");
    if (add_max && maxs.size() == 1)
        throw Error(ErrorCode::AlreadyBounded, "poset already has a maximum");

    std::vector<int> ranks = p.ranks();
    std::vector<Cover> covers = p.covers();
    if (add_min) {
        FaceId m = static_cast<FaceId>(ranks.size());
        ranks.push_back(p.min_rank() - 1);
        for (FaceId f : mins)
            covers.emplace_back(f, m);
    }
    if (add_max) {
        FaceId m = static_cast<FaceId>(ranks.size());
        ranks.push_back(p.max_rank() + 1);
        for (FaceId f : maxs)
            covers.emplace_back(m, f);
    }
    return build_poset(std::move(ranks), std::move(covers));
}

auto cardinal_product(const FacePoset& a, const FacePoset& b) -> FacePoset
{
    const int nb = b.size();
    auto id = [nb](FaceId x, FaceId y) { return x * nb + y; };
    std::vector<int> ranks(a.size() * nb);
    std::vector<Cover> covers;
    for (FaceId x = 0; x < a.size(); ++x)
        for (FaceId y = 0; y < nb; ++y) {
            ranks[id(x, y)] = a.rank(x) + b.rank(y);
            for (FaceId lx : a.lower_covers(x))
                covers.emplace_back(id(x, y), id(lx, y));
            for (FaceId ly : b.lower_covers(y))
                covers.emplace_back(id(x, y), id(x, ly));
        }
    return build_poset(std::move(ranks), std::move(covers));
}

auto Bitset::operator|=(const Bitset& o) -> Bitset&
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

auto Bitset::operator&=(const Bitset& o) -> Bitset&
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

auto Bitset::count() const -> int
{
    int c = 0;
    for (auto w : words_)
        c += std::popcount(w);
    return c;
}

auto Bitset::subset_of(const Bitset& o) const -> bool
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i])
            return false;
    return true;
}

Reachability::Reachability(const FacePoset& p)
{
    const int n = p.size();
    below_.assign(n, Bitset(n));
    above_.assign(n, Bitset(n));
    std::vector<FaceId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](FaceId x, FaceId y) { return p.rank(x) < p.rank(y); });
    for (FaceId f : order) {
        below_[f].set(f);
        for (FaceId l : p.lower_covers(f))
            below_[f] |= below_[l];
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        FaceId f = *it;
        above_[f].set(f);
        for (FaceId u : p.upper_covers(f))
            above_[f] |= above_[u];
    }
}

} // namespace polyprod
