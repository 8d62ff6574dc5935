#include <sepsys/tangletree.hh>
#include <sepsys/quotient.hh>
#include <sepsys/regularization.hh>

#include <algorithm>
#include <sstream>

namespace sepsys {

ProfileSet induced_set(const Universe & u, const ProfileSet & profiles, int k)
{
    ProfileSet result;
    for (const auto & p : profiles) {
        if (! p.order)
            throw precondition_error("induced_set: profile without an order");
        result.insert(*p.order <= k ? p : induced(u, p, k));
    }
    return result;
}

FocusContext focus(const Universe & u, const Profile & p, const LevelState & state, const ProfileSet & profiles)
{
    if (! p.order || *p.order != state.k)
        throw precondition_error("focus: profile is not of the state's order");
    const int k = state.k;

    FocusContext ctx;
    ctx.profile = p;

    for (const auto & q : induced_set(u, profiles, k + 1))
        if (q.order == k + 1 && induced(u, q, k).chosen == p.chosen)
            ctx.successors.insert(q);

    std::vector<SepId> held;
    for (SepId t : state.tree)
        if (p.contains(t))
            held.push_back(t);
    ctx.maximal = maximal_elements(u, held);

    ctx.region = Bits(u.size());
    for (SepId x = 0; x < u.size(); ++x)
        if (std::all_of(ctx.maximal.begin(), ctx.maximal.end(), [&](SepId n) { return points_towards(u, n, x); }))
            ctx.region.set(x);

    auto region = to_ids(ctx.region);
    for (SepId a : region) {
        for (SepId b : region)
            if (! ctx.region.test(u.join(a, b)) || ! ctx.region.test(u.meet(a, b))) {
                ctx.region_is_sublattice = false;
                break;
            }
        if (! ctx.region_is_sublattice)
            break;
    }
    return ctx;
}

SepId find_focus_distinguisher(const Universe & u, SepId r, const FocusContext & ctx)
{
    const int k = ctx.k();
    const auto & qs = ctx.successors;
    if (u.order(r) > k)
        throw precondition_error("find_focus_distinguisher: r is not oriented by the successor profiles");
    const auto image = f_image(u, r, qs);
    if (image.none() || image.all())
        throw precondition_error("find_focus_distinguisher: r does not distinguish successor profiles");
    if (ctx.maximal.empty())
        return r;

    std::vector<SepId> fiber;
    for (SepId x = 0; x < u.size(); ++x)
        if (u.order(x) <= k && f_image(u, x, qs) == image)
            fiber.push_back(x);

    // smallest element of the fiber: the inverse of the greatest element of
    // the complementary fiber
    std::vector<SepId> inverted;
    for (SepId x : fiber)
        inverted.push_back(u.inv(x));
    SepId smallest = u.inv(maximal_elements(u, inverted).front());
    for (SepId x : fiber)
        if (! u.leq(smallest, x))
            throw hypothesis_violation("find_focus_distinguisher: fiber of " + std::to_string(r)
                    + " has no smallest element");

    std::vector<SepId> below;
    for (SepId n : ctx.maximal)
        if (u.leq(n, u.inv(smallest)))
            below.push_back(n);

    std::vector<SepId> candidates;
    for (SepId x : fiber)
        if (std::all_of(below.begin(), below.end(), [&](SepId n) { return u.leq(n, u.inv(x)); }))
            candidates.push_back(x);

    SepId t = maximal_elements(u, candidates).front();
    for (SepId n : ctx.maximal)
        if (! points_towards(u, n, t)) {
            std::ostringstream msg;
            msg << "find_focus_distinguisher: " << n << " does not point towards the candidate " << t
                << " (non-robust successor profiles?)";
            throw hypothesis_violation(msg.str());
        }
    return t;
}

LevelState build_level(const Universe & u, const LevelState & state, const ProfileSet & profiles)
{
    const int k = state.k;
    LevelState next{k + 1, state.tree, induced_set(u, profiles, k + 1)};

    for (const auto & p : state.profiles) {
        if (p.order != k)
            continue;
        auto ctx = focus(u, p, state, profiles);
        if (ctx.successors.size() < 2)
            continue;

        Bits members(u.size());
        for (auto x = ctx.region.find_first(); x != Bits::npos; x = ctx.region.find_next(x))
            if (u.order(SepId(x)) == k)
                members.set(x);
        auto sys = induced_corner_system(u, members);

        ProfileSet restricted;
        for (const auto & q : ctx.successors)
            restricted.insert(Profile{q.chosen & members, std::nullopt});
        if (restricted.size() != ctx.successors.size()) {
            std::ostringstream msg;
            msg << "build_level: at k=" << k << " two successor profiles agree on every " << k
                << "-separation of the focus region";
            throw hypothesis_violation(msg.str());
        }

        auto piece = tree_set_nonregular(sys, restricted);
        next.tree.insert(next.tree.end(), piece.begin(), piece.end());
    }

    std::sort(next.tree.begin(), next.tree.end());
    next.tree.erase(std::unique(next.tree.begin(), next.tree.end()), next.tree.end());
    return next;
}

TreeOfTangles tree_of_tangles(const Universe & u, const ProfileSet & profiles)
{
    if (! u.has_order())
        throw precondition_error("tree_of_tangles: universe has no order function");

    int max_order = 0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto & p = profiles[i];
        if (! p.order)
            throw precondition_error("tree_of_tangles: profile " + std::to_string(i) + " has no order");
        if (p.chosen.size() != u.size())
            throw precondition_error("tree_of_tangles: profile " + std::to_string(i) + " is over another universe");
        if (! is_regular_profile(u, p))
            throw precondition_error("tree_of_tangles: profile " + std::to_string(i)
                    + " is not regular (use tree_set_nonregular per level)");
        if (! is_robust(u, p))
            throw precondition_error("tree_of_tangles: profile " + std::to_string(i) + " is not robust");
        max_order = std::max(max_order, *p.order);
    }

    TreeOfTangles result;
    result.levels.push_back(LevelState{0, {}, induced_set(u, profiles, 0)});
    for (int k = 0; k < max_order; ++k)
        result.levels.push_back(build_level(u, result.levels.back(), profiles));
    result.tree = result.levels.back().tree;

    const std::size_t n = profiles.size();
    std::vector<std::optional<int>> best(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best[i * n + j] = min_distinguishing_order(u, profiles[i], profiles[j]);

    for (SepId t : result.tree) {
        bool found = false;
        for (std::size_t i = 0; i < n && ! found; ++i)
            for (std::size_t j = i + 1; j < n && ! found; ++j)
                if (distinguishes(t, u.inv(t), profiles[i], profiles[j]) && best[i * n + j] == u.order(t)) {
                    result.certificates.push_back(Certificate{t, i, j});
                    found = true;
                }
        if (! found)
            throw hypothesis_violation("tree_of_tangles: separation " + std::to_string(t)
                    + " efficiently distinguishes no pair of profiles");
    }
    return result;
}

}
