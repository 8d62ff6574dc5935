#include "support.hh"

#include <sepsys/core.hh>

#include <bit>

using namespace testing;

namespace
{
    Universe degenerate_only()
    {
        return Universe::build(1, [](SepId s) { return s; }, [](SepId, SepId) { return true; },
                [](SepId, SepId) { return SepId(0); }, [](SepId, SepId) { return SepId(0); }, std::vector<int>{0});
    }

    // A three-element chain whose "involution" is a 3-cycle.
    Universe broken_involution()
    {
        return Universe::build(3, [](SepId s) { return SepId((s + 1) % 3); },
                [](SepId s, SepId t) { return s <= t; },
                [](SepId s, SepId t) { return std::max(s, t); },
                [](SepId s, SepId t) { return std::min(s, t); });
    }
}

TEST_CASE("validate_universe accepts the powerset of {1,2,3,4}")
{
    const auto & u = set4();
    CHECK(validate_universe(u).ok());

    // submodularity of min(|X|, 4 - |X|), recomputed without the universe
    for (SepId x = 0; x < 16; ++x)
        for (SepId y = 0; y < 16; ++y) {
            auto ord = [](SepId z) { return std::min(std::popcount(z), 4 - std::popcount(z)); };
            CHECK(ord(x | y) + ord(x & y) <= ord(x) + ord(y));
        }
}

TEST_CASE("validate_universe reports a broken involution")
{
    auto report = validate_universe(broken_involution());
    REQUIRE_FALSE(report.ok());
    bool mentions = false;
    for (const auto & v : report.violations)
        mentions = mentions || v.find("inv is not an involution at 0") != std::string::npos;
    CHECK(mentions);
}

TEST_CASE("a single degenerate element is a legal universe")
{
    auto u = degenerate_only();
    CHECK(validate_universe(u).ok());
    auto c = classify(u, 0);
    CHECK(c.degenerate);
    CHECK(c.small);
    CHECK(c.cosmall);
}

TEST_CASE("validate_universe catches a non-submodular order")
{
    std::vector<int> ord(16);
    for (SepId x = 0; x < 16; ++x)
        ord[x] = std::popcount(x) == 2 ? 0 : 1;
    auto bad = Universe::build(16, [](SepId x) { return 15 & ~x; }, [](SepId x, SepId y) { return (x & ~y) == 0; },
            [](SepId x, SepId y) { return x | y; }, [](SepId x, SepId y) { return x & y; }, ord);
    CHECK_FALSE(validate_universe(bad).ok());
}

TEST_CASE("subsystem_k")
{
    const auto & u = set4();
    CHECK(subsystem_k(u, 0).members.none());
    CHECK(subsystem_k(u, 1).elements() == std::vector<SepId>{0, 15});

    // INST-2TRI, k=2: every bipartition with a separator of size at most one,
    // counted straight from the graph
    const auto & tri = *two_triangles().universe;
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
    std::size_t expected = 0;
    for (int code = 0; code < 729; ++code) {
        int side[6], c = code, separator = 0;
        for (int v = 0; v < 6; ++v, c /= 3) {
            side[v] = c % 3;
            separator += side[v] == 2;
        }
        bool ok = separator <= 1;
        for (auto [a, b] : edges)
            if ((side[a] == 0 && side[b] == 1) || (side[a] == 1 && side[b] == 0))
                ok = false;
        expected += ok;
    }
    auto s2 = subsystem_k(tri, 2);
    CHECK(s2.members.count() == expected);
    for (SepId s : s2.elements())
        CHECK(tri.order(s) <= 1);
}

TEST_CASE("subsystem_k is monotone in k")
{
    for (const auto & u : random_graph_universes(11, 10, 5))
        for (int k = 0; k < u.max_order(); ++k)
            CHECK(subsystem_k(u, k).members.is_subset_of(subsystem_k(u, k + 1).members));
}

TEST_CASE("classify on the powerset universe")
{
    const auto & u = set4();
    auto empty = classify(u, 0);
    CHECK(empty.small);
    CHECK(empty.trivial);
    CHECK_FALSE(empty.degenerate);
    CHECK(is_trivial_in(u, 0));

    auto c = classify(u, subset({1, 2}));
    CHECK(c == Classification{});

    auto full = classify(u, 15);
    CHECK(full.cosmall);
    CHECK(full.cotrivial);
}

TEST_CASE("classify rejects a non-member")
{
    auto sys = family(set4(), {subset({1})}, CornerStrategy::induced);
    CHECK_THROWS_AS(classify(sys, subset({1, 2})), precondition_error);
}

TEST_CASE("classify coherence on random universes")
{
    for (const auto & u : random_graph_universes(12, 10, 5))
        for (SepId s = 0; s < u.size(); ++s) {
            auto c = classify(u, s);
            if (c.degenerate)
                CHECK((c.small && c.cosmall));
            if (c.trivial)
                CHECK(c.small);
        }
}

TEST_CASE("is_regular_system")
{
    const auto & u = set4();
    CHECK(is_regular_system(induced_corner_system(u, Bits(u.size()))));
    CHECK_FALSE(is_regular_system(level(u, 1)));
    CHECK(is_regular_system(family(u, {subset({1}), subset({1, 2})}, CornerStrategy::induced)));
}

TEST_CASE("nested and points_towards")
{
    const auto & u = set4();
    CHECK(nested(u, subset({1}), subset({1, 2})));
    CHECK_FALSE(nested(u, subset({1, 2}), subset({2, 3})));
    for (SepId s = 0; s < 16; ++s)
        CHECK(nested(u, s, s));

    CHECK(points_towards(u, subset({1}), subset({1, 2})));
    CHECK(points_towards(u, subset({1}), subset({2, 3, 4})));
    CHECK_FALSE(points_towards(u, subset({1, 2}), subset({2, 3})));
}

TEST_CASE("nestedness is invariant under inverting both sides")
{
    for (const auto & u : random_graph_universes(13, 8, 5))
        for (SepId s = 0; s < u.size(); ++s)
            for (SepId t = 0; t < u.size(); ++t)
                CHECK(nested(u, s, t) == nested(u, u.inv(s), u.inv(t)));
}

TEST_CASE("random graph universes are submodular lattices with inv(join) = meet(inv, inv)")
{
    for (const auto & u : random_graph_universes(14, 15, 5)) {
        auto report = validate_universe(u);
        CHECK_MESSAGE(report.ok(), (report.ok() ? "" : report.violations.front()));
        for (SepId s = 0; s < u.size(); ++s)
            for (SepId t = 0; t < u.size(); ++t)
                CHECK(u.inv(u.join(s, t)) == u.meet(u.inv(s), u.inv(t)));
    }
}

TEST_CASE("is_consistent")
{
    const auto & u = set4();
    CHECK(is_consistent(u, {}));
    SepId s = subset({1}), t = subset({1, 2});
    REQUIRE(u.less(s, t));
    CHECK_FALSE(is_consistent(u, {t, u.inv(s)}));
    CHECK(is_consistent(u, {s, t}));

    for (const auto & p : enumerate_profiles(level(*two_triangles().universe, 3)))
        CHECK(is_consistent(two_triangles().system, p.ids()));
}

TEST_CASE("is_tree_set")
{
    const auto & u = set4();
    CHECK(is_tree_set({}, u));
    CHECK_FALSE(is_tree_set({0, 15}, u));
    CHECK(is_tree_set({subset({1}), subset({1, 2})}, u));
    CHECK_FALSE(is_tree_set({subset({1, 2}), subset({2, 3})}, u));
}

TEST_CASE("corner systems: induced corners exist exactly when the join is a member")
{
    const auto & u = *two_triangles().universe;
    auto sys = level(u, 2);
    CHECK(validate_corner_system(sys).ok());
    for (SepId s : sys.elements())
        for (SepId t : sys.elements()) {
            bool inside = sys.contains(u.join(s, t));
            CHECK(sys.corner(s, t).has_value() == inside);
            if (auto m = sys.corner_meet(s, t))
                CHECK(*m == u.meet(s, t));
        }
}

TEST_CASE("CornerSystem::build rejects corners leaving the system")
{
    const auto & u = set4();
    std::vector<SepId> elements = {subset({1}), subset({2, 3, 4})};
    CHECK_THROWS_AS(CornerSystem::build(16, elements, [&](SepId s) { return u.inv(s); },
                [&](SepId s, SepId t) { return u.leq(s, t); },
                [&](SepId, SepId) -> std::optional<SepId> { return SepId(0); }),
            precondition_error);
}

TEST_CASE("maximal_elements")
{
    const auto & u = set4();
    auto m = maximal_elements(u, {subset({1}), subset({1, 2}), subset({3})});
    CHECK(m == std::vector<SepId>{subset({1, 2}), subset({3})});
}
