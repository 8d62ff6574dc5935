#include "support.hh"

#include <sepsys/oracle.hh>
#include <sepsys/quotient.hh>
#include <sepsys/tangletree.hh>

#include <algorithm>

using namespace testing;

namespace
{
    std::vector<std::string> labels_of(const Universe & u, const std::vector<SepId> & ids)
    {
        std::vector<std::string> out;
        for (SepId s : ids)
            out.push_back(u.label(s));
        return out;
    }

    // The order-k separations of the focus region with the successors cut
    // down to them, as handed to the abstract construction.
    std::pair<CornerSystem, ProfileSet> focus_system(const Universe & u, const FocusContext & ctx)
    {
        Bits members(u.size());
        for (auto x = ctx.region.find_first(); x != Bits::npos; x = ctx.region.find_next(x))
            if (u.order(SepId(x)) == ctx.k())
                members.set(x);
        ProfileSet restricted;
        for (const auto & q : ctx.successors)
            restricted.insert(Profile{q.chosen & members, std::nullopt});
        return {induced_corner_system(u, members), restricted};
    }

    template <typename F>
    void each_focus(const Universe & u, F && f)
    {
        auto ts = tangles(u);
        auto result = tree_of_tangles(u, ts);
        for (std::size_t k = 0; k + 1 < result.levels.size(); ++k)
            for (const auto & p : result.levels[k].profiles)
                if (p.order == int(k))
                    f(focus(u, p, result.levels[k], ts), result.levels[k]);
    }
}

TEST_CASE("induced_set")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);

    auto zero = induced_set(u, ts, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].chosen.none());

    CHECK(induced_set(u, ts, u.max_order()).same_sets(ts));

    auto ones = induced_set(u, ts, 1);
    auto brute = oracle::brute_profiles(level(u, 1));
    for (const auto & p : ones) {
        REQUIRE(p.order <= 1);
        if (p.order == 1)
            CHECK(brute.index_of(p.chosen).has_value());
        else
            CHECK(p.chosen.none());
    }

    ProfileSet untagged({Profile{Bits(u.size()), std::nullopt}});
    CHECK_THROWS_AS(induced_set(u, untagged, 1), precondition_error);
}

TEST_CASE("focus at level zero covers the whole universe")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    LevelState start{0, {}, induced_set(u, ts, 0)};
    auto ctx = focus(u, start.profiles[0], start, ts);
    CHECK(ctx.maximal.empty());
    CHECK(ctx.region.all());
    CHECK(ctx.region_is_sublattice);
    REQUIRE(ctx.successors.size() == 1);
    CHECK(ctx.successors[0].order == 1);

    Profile wrong = start.profiles[0];
    wrong.order = 1;
    CHECK_THROWS_AS(focus(u, wrong, start, ts), precondition_error);
}

TEST_CASE("focus regions on INST-K4PAIR")
{
    const auto & u = *k4_pair().universe;
    std::size_t checked = 0;
    each_focus(u, [&](const FocusContext & ctx, const LevelState & state) {
        std::vector<SepId> held;
        for (SepId t : state.tree)
            if (ctx.profile.contains(t))
                held.push_back(t);
        for (SepId t : held)
            CHECK(std::any_of(ctx.maximal.begin(), ctx.maximal.end(), [&](SepId m) { return u.leq(t, m); }));
        for (SepId x = 0; x < u.size(); ++x) {
            bool towards = true;
            for (SepId m : ctx.maximal)
                towards = towards && (u.leq(m, x) || u.leq(m, u.inv(x)));
            CHECK(ctx.region.test(x) == towards);
        }
        for (const auto & q : ctx.successors)
            CHECK(induced(u, q, ctx.k()).chosen == ctx.profile.chosen);
        checked += ctx.k() == 2;
    });
    CHECK(checked > 0);
}

TEST_CASE("the focus system is orderly for the successors")
{
    auto check = [](const Universe & u) {
        each_focus(u, [&](const FocusContext & ctx, const LevelState &) {
            if (ctx.successors.size() < 2)
                return;
            auto [sys, restricted] = focus_system(u, ctx);
            auto c = check_orderly(sys, restricted);
            CHECK_MESSAGE(c.orderly, "k=" << ctx.k());
        });
    };
    check(*two_triangles().universe);
    check(*k4_pair().universe);
    for (const auto & u : random_graph_universes(51, 20, 6))
        check(u);
}

TEST_CASE("find_focus_distinguisher stays in the region with the same image")
{
    std::size_t calls = 0;
    auto check = [&](const Universe & u) {
        each_focus(u, [&](const FocusContext & ctx, const LevelState &) {
            if (ctx.successors.size() < 2)
                return;
            for (SepId r = 0; r < u.size(); ++r) {
                if (u.order(r) > ctx.k())
                    continue;
                auto image = f_image(u, r, ctx.successors);
                if (image.none() || image.all()) {
                    CHECK_THROWS_AS(find_focus_distinguisher(u, r, ctx), precondition_error);
                    continue;
                }
                ++calls;
                CHECK(u.order(r) == ctx.k());
                SepId d = find_focus_distinguisher(u, r, ctx);
                CHECK(ctx.region.test(d));
                CHECK(u.order(d) == ctx.k());
                CHECK(f_image(u, d, ctx.successors) == image);
                if (ctx.maximal.empty())
                    CHECK(d == r);
            }
        });
    };
    check(*two_triangles().universe);
    check(*k4_pair().universe);
    for (const auto & u : random_graph_universes(52, 20, 6))
        check(u);
    CHECK(calls > 0);
}

TEST_CASE("tree of tangles of INST-2TRI")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    CHECK(ts.size() == 7);
    auto result = tree_of_tangles(u, ts);
    CHECK(labels_of(u, result.tree) == std::vector<std::string>{"abc|cdef", "abcd|def", "def|abcd", "cdef|abc"});
    CHECK(oracle::verify_tree(result.tree, ts, u).ok());
    for (const auto & c : result.certificates) {
        CHECK(distinguishes(c.sep, u.inv(c.sep), ts[c.first], ts[c.second]));
        CHECK(u.order(c.sep) == oracle::brute_min_order(u, ts[c.first], ts[c.second]));
    }
    CHECK(result.certificates.size() == result.tree.size());
}

TEST_CASE("tree of tangles of INST-K4PAIR")
{
    const auto & u = *k4_pair().universe;
    auto ts = tangles(u);
    auto result = tree_of_tangles(u, ts);
    CHECK(labels_of(u, result.tree)
            == std::vector<std::string>{"abcd|defgh", "abcde|efgh", "efgh|abcde", "defgh|abcd"});
    auto report = oracle::verify_tree(result.tree, ts, u);
    CHECK_MESSAGE(report.ok(), (report.ok() ? "" : report.violations.front().witness));
    for (const auto & c : result.certificates)
        CHECK(u.order(c.sep) == oracle::brute_min_order(u, ts[c.first], ts[c.second]));

    // every pair the tree leaves undistinguished is indistinguishable
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            bool split = std::any_of(result.tree.begin(), result.tree.end(),
                    [&](SepId t) { return distinguishes(t, u.inv(t), ts[i], ts[j]); });
            CHECK(split == oracle::brute_min_order(u, ts[i], ts[j]).has_value());
        }
}

TEST_CASE("level invariants on random graphs")
{
    for (const auto & u : random_graph_universes(53, 25, 6)) {
        auto ts = tangles(u);
        auto result = tree_of_tangles(u, ts);
        auto report = oracle::verify_tree(result.tree, ts, u);
        CHECK_MESSAGE(report.ok(), (report.ok() ? "" : report.violations.front().witness));
        for (std::size_t k = 0; k < result.levels.size(); ++k) {
            const auto & level_k = result.levels[k];
            CHECK(level_k.k == int(k));
            CHECK(is_tree_set(level_k.tree, u));
            for (SepId t : level_k.tree) {
                CHECK(u.order(t) < int(k));
                CHECK(std::binary_search(level_k.tree.begin(), level_k.tree.end(), u.inv(t)));
            }
            if (k > 0) {
                const auto & prev = result.levels[k - 1].tree;
                CHECK(std::includes(level_k.tree.begin(), level_k.tree.end(), prev.begin(), prev.end()));
                for (SepId t : level_k.tree)
                    if (! std::binary_search(prev.begin(), prev.end(), t))
                        CHECK(u.order(t) == int(k) - 1);
            }
            // T_k distinguishes the induced k-profiles efficiently
            auto pk = induced_set(u, ts, int(k));
            CHECK(oracle::verify_tree(level_k.tree, pk, u).ok());
        }
    }
}

TEST_CASE("build_level leaves a level with one successor per profile unchanged")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    LevelState start{0, {}, induced_set(u, ts, 0)};
    auto next = build_level(u, start, ts);
    CHECK(next.k == 1);
    CHECK(next.tree.empty());
    CHECK(next.profiles.same_sets(induced_set(u, ts, 1)));
}

TEST_CASE("tree_of_tangles preconditions")
{
    const auto & u = *two_triangles().universe;
    ProfileSet corners;
    for (const auto & p : enumerate_k_profiles(u, 1))
        if (! is_regular_profile(u, p))
            corners.insert(p);
    REQUIRE(corners.size() == 1);
    CHECK_THROWS_AS(tree_of_tangles(u, corners), precondition_error);

    ProfileSet untagged({Profile{Bits(u.size()), std::nullopt}});
    CHECK_THROWS_AS(tree_of_tangles(u, untagged), precondition_error);

    ProfileSet foreign({Profile{Bits(3), 0}});
    CHECK_THROWS_AS(tree_of_tangles(u, foreign), precondition_error);

    auto no_order = Universe::build(2, [](SepId s) { return 1 - s; }, [](SepId s, SepId t) { return s <= t; },
            [](SepId s, SepId t) { return std::max(s, t); }, [](SepId s, SepId t) { return std::min(s, t); });
    CHECK_THROWS_AS(tree_of_tangles(no_order, {}), precondition_error);
}

TEST_CASE("tree_of_tangles without profiles is empty")
{
    auto result = tree_of_tangles(*two_triangles().universe, {});
    CHECK(result.tree.empty());
    CHECK(result.certificates.empty());
}
