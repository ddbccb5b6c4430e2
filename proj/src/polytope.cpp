#include <polyprod/error.hpp>
#include <polyprod/polytope.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

namespace polyprod {

struct Polytope::State {
    FacePoset poset;
    int rank = -1;
    FaceId min_face = 0;
    FaceId max_face = 0;
    std::once_flag flags_once;
    std::unique_ptr<FlagSet> flags;
};

auto Polytope::poset() const -> const FacePoset& { return state_->poset; }
auto Polytope::rank() const -> int { return state_->rank; }
auto Polytope::size() const -> int { return state_->poset.size(); }
auto Polytope::min_face() const -> FaceId { return state_->min_face; }
auto Polytope::max_face() const -> FaceId { return state_->max_face; }

auto Polytope::make(FacePoset poset) -> Polytope
{
    auto s = std::make_shared<State>();
    auto mins = poset.minimal_faces();
    auto maxs = poset.maximal_faces();
    s->min_face = mins.empty() ? 0 : mins.front();
    s->max_face = maxs.empty() ? 0 : maxs.front();
    s->rank = poset.max_rank();
    s->poset = std::move(poset);
    return Polytope(std::move(s));
}

auto Polytope::from_poset(FacePoset poset) -> Polytope
{
    auto report = validate_polytope(poset);
    if (! report.is_polytope) {
        const auto& v = report.violations.front();
        throw Error(ErrorCode::NotAPolytope, violation_name(v.kind) + " (" + std::to_string(v.lower) + ","
                + std::to_string(v.upper) + ")");
    }
    return make(std::move(poset));
}

auto Polytope::trusted(FacePoset poset) -> Polytope
{
    return make(std::move(poset));
}

auto Polytope::empty() -> Polytope
{
    return make(build_poset({-1}, {}));
}

auto Polytope::f_vector() const -> std::vector<int>
{
    std::vector<int> f(std::max(rank(), 0), 0);
    for (int r : poset().ranks())
        if (r >= 0 && r < rank())
            ++f[r];
    return f;
}

auto Polytope::flag_set() const -> const FlagSet&
{
    std::call_once(state_->flags_once, [this] { state_->flags = std::make_unique<FlagSet>(state_->poset, state_->rank); });
    return *state_->flags;
}

FlagSet::FlagSet(const FacePoset& poset, int rank) : rank_(rank)
{
    auto mins = poset.minimal_faces();
    Flag current;
    std::function<void(FaceId)> walk = [&](FaceId f) {
        current.push_back(f);
        if (poset.upper_covers(f).empty())
            flags_.push_back(current);
        else
            for (FaceId g : poset.upper_covers(f))
                walk(g);
        current.pop_back();
    };
    for (FaceId m : mins)
        walk(m);

    if (rank_ <= 0)
        return;
    adjacency_.resize(flags_.size() * static_cast<std::size_t>(rank_));
    Flag scratch;
    for (int idx = 0; idx < size(); ++idx) {
        const Flag& fl = flags_[idx];
        for (int i = 0; i < rank_; ++i) {
            FaceId below = fl[i], here = fl[i + 1], above = fl[i + 2];
            FaceId other = -1;
            for (FaceId h : poset.upper_covers(below))
                if (h != here && std::binary_search(poset.lower_covers(above).begin(), poset.lower_covers(above).end(), h)) {
                    other = h;
                    break;
                }
            if (other < 0)
                throw Error(ErrorCode::NotAPolytope, "flag without an adjacent flag");
            scratch = fl;
            scratch[i + 1] = other;
            adjacency_[static_cast<std::size_t>(idx) * rank_ + i] = *index_of(scratch);
        }
    }
}

auto FlagSet::index_of(const Flag& f) const -> std::optional<int>
{
    auto it = std::lower_bound(flags_.begin(), flags_.end(), f);
    if (it == flags_.end() || *it != f)
        return std::nullopt;
    return static_cast<int>(it - flags_.begin());
}

auto violation_name(ViolationKind k) -> std::string
{
    switch (k) {
    case ViolationKind::NoMinimum: return "NoMinimum";
    case ViolationKind::NoMaximum: return "NoMaximum";
    case ViolationKind::ChainLengthMismatch: return "ChainLengthMismatch";
    case ViolationKind::DiamondViolation: return "DiamondViolation";
    case ViolationKind::SectionDisconnected: return "SectionDisconnected";
    case ViolationKind::RankGap: return "RankGap";
    }
    return "Unknown";
}

namespace {

auto interior_connected(const FacePoset& p, const Bitset& interior) -> bool
{
    int total = interior.count();
    if (total <= 1)
        return true;
    FaceId start = -1;
    interior.for_each([&](int f) {
        if (start < 0)
            start = f;
    });
    std::vector<char> seen(p.size(), 0);
    std::vector<FaceId> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (! stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (const auto* nbrs : {&p.upper_covers(f), &p.lower_covers(f)})
            for (FaceId g : *nbrs)
                if (! seen[g] && interior.test(g)) {
                    seen[g] = 1;
                    ++reached;
                    stack.push_back(g);
                }
    }
    return reached == total;
}

} // namespace

auto validate_polytope(const FacePoset& p) -> ValidationReport
{
    ValidationReport report;
    auto add = [&](ViolationKind k, FaceId lower = -1, FaceId upper = -1) {
        report.violations.push_back({k, lower, upper});
    };
    const int n = p.size();
    if (n == 0) {
        add(ViolationKind::NoMinimum);
        add(ViolationKind::NoMaximum);
        report.is_polytope = false;
        return report;
    }
    auto mins = p.minimal_faces();
    auto maxs = p.maximal_faces();
    if (mins.size() != 1)
        add(ViolationKind::NoMinimum);
    if (maxs.size() != 1)
        add(ViolationKind::NoMaximum);

    const int lo = p.min_rank(), hi = p.max_rank();
    bool gap = lo != -1 || hi < 0;
    std::vector<int> per_rank(hi - lo + 1, 0);
    for (int r : p.ranks())
        ++per_rank[r - lo];
    for (int c : per_rank)
        if (c == 0)
            gap = true;
    if (gap)
        add(ViolationKind::RankGap);

    for (FaceId f = 0; f < n; ++f) {
        if (p.lower_covers(f).empty() && p.rank(f) != lo)
            add(ViolationKind::ChainLengthMismatch, f, -1);
        if (p.upper_covers(f).empty() && p.rank(f) != hi)
            add(ViolationKind::ChainLengthMismatch, -1, f);
    }

    std::map<FaceId, int> between;
    for (FaceId f = 0; f < n; ++f) {
        between.clear();
        for (FaceId h : p.upper_covers(f))
            for (FaceId g : p.upper_covers(h))
                ++between[g];
        for (auto [g, c] : between)
            if (c != 2)
                add(ViolationKind::DiamondViolation, f, g);
    }

    if (mins.size() == 1 && maxs.size() == 1) {
        Reachability reach(p);
        for (FaceId g = 0; g < n; ++g)
            reach.down_set(g).for_each([&](int f) {
                if (p.rank(g) - p.rank(f) < 3)
                    return;
                Bitset interior = reach.down_set(g);
                interior &= reach.up_set(f);
                interior.reset(f);
                interior.reset(g);
                if (! interior_connected(p, interior))
                    add(ViolationKind::SectionDisconnected, f, g);
            });
    }

    report.is_polytope = report.violations.empty();
    return report;
}

auto dual(const Polytope& p) -> Polytope
{
    return Polytope::trusted(dual(p.poset()));
}

auto section(const Polytope& p, FaceId f, FaceId g) -> Polytope
{
    const auto& poset = p.poset();
    if (f < 0 || g < 0 || f >= poset.size() || g >= poset.size())
        throw Error(ErrorCode::DanglingId, "section endpoints");
    if (! poset.leq(f, g))
        throw Error(ErrorCode::NotComparable, std::to_string(f) + " is not below " + std::to_string(g));
    Reachability reach(poset);
    Bitset interval = reach.up_set(f);
    interval &= reach.down_set(g);
    std::vector<FaceId> keep;
    interval.for_each([&](int h) { keep.push_back(h); });
    return Polytope::trusted(shift_ranks(induced(poset, keep), -poset.rank(f) - 1));
}

auto strip_with_map(const Polytope& p, Ends ends) -> std::pair<FacePoset, std::vector<FaceId>>
{
    const bool drop_min = ends == Ends::Min || ends == Ends::Both;
    const bool drop_max = ends == Ends::Max || ends == Ends::Both;
    std::vector<FaceId> keep;
    for (FaceId f = 0; f < p.size(); ++f) {
        if (drop_min && f == p.min_face())
            continue;
        if (drop_max && f == p.max_face())
            continue;
        keep.push_back(f);
    }
    auto poset = induced(p.poset(), keep);
    return {std::move(poset), std::move(keep)};
}

auto strip(const Polytope& p, Ends ends) -> FacePoset
{
    return strip_with_map(p, ends).first;
}

} // namespace polyprod
