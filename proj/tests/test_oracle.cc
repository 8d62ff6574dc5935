#include "support.hh"

#include <sepsys/oracle.hh>
#include <sepsys/quotient.hh>
#include <sepsys/tangletree.hh>

using namespace testing;

namespace
{
    bool has_check(const oracle::VerificationReport & r, const std::string & check)
    {
        for (const auto & v : r.violations)
            if (v.check == check)
                return true;
        return false;
    }
}

TEST_CASE("brute_profiles")
{
    auto empty = induced_corner_system(set4(), Bits(16));
    CHECK(oracle::brute_profiles(empty).size() == 1);

    auto pair = family(set4(), {subset({1})}, CornerStrategy::induced);
    CHECK(oracle::brute_profiles(pair).size() == 2);

    const auto & u = *two_triangles().universe;
    Bits degenerate(u.size());
    degenerate.set(by_label(u, "abcdef|abcdef"));
    CHECK(oracle::brute_profiles(induced_corner_system(u, degenerate)).empty());

    auto three = family(set4(), {subset({1}), subset({2}), subset({3})}, CornerStrategy::induced);
    CHECK_THROWS_AS(oracle::brute_profiles(three, {.max_pairs = 2}), limit_exceeded);
    CHECK_NOTHROW(oracle::brute_profiles(three, {.max_pairs = 3}));
}

TEST_CASE("brute_profiles agrees with enumeration on random systems")
{
    fuzz::Rng rng(61);
    for (int i = 0; i < 40; ++i) {
        auto a = fuzz::random_regular_system(rng, 4, 10, "r");
        CHECK(oracle::brute_profiles(a.system).same_sets(enumerate_profiles(a.system)));
        auto b = fuzz::random_bipartition_system(rng, 3, 10, "b");
        CHECK(oracle::brute_profiles(b.system).same_sets(enumerate_profiles(b.system)));
    }
}

TEST_CASE("brute_min_order")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    for (const auto & p : ts) {
        CHECK_FALSE(oracle::brute_min_order(u, p, p).has_value());
        if (p.order == 0)
            for (const auto & q : ts)
                CHECK_FALSE(oracle::brute_min_order(u, p, q).has_value());
    }
    const Profile * abc = nullptr;
    const Profile * def = nullptr;
    for (const auto & p : ts)
        if (p.order == 2) {
            if (p.contains(by_label(u, "cdef|abc")))
                abc = &p;
            if (p.contains(by_label(u, "abcd|def")))
                def = &p;
        }
    REQUIRE(abc);
    REQUIRE(def);
    CHECK(oracle::brute_min_order(u, *abc, *def) == 1);
}

TEST_CASE("verify_tree accepts the tree of INST-2TRI and rejects broken ones")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    auto tree = tree_of_tangles(u, ts).tree;
    auto ok = oracle::verify_tree(tree, ts, u, "2tri");
    CHECK(ok.ok());
    CHECK(ok.instance == "2tri");
    CHECK(ok.checks.size() >= 4);

    CHECK(has_check(oracle::verify_tree({}, ts, u), "efficient-distinguishing"));

    auto trivial = tree;
    trivial.push_back(0);
    trivial.push_back(u.inv(0));
    CHECK(has_check(oracle::verify_tree(trivial, ts, u), "tree-set"));

    // an order-1 separation crossing the bridge side
    std::vector<SepId> crossing = tree;
    bool found = false;
    for (SepId s = 0; s < u.size() && ! found; ++s)
        if (u.order(s) == 1 && ! nested(u, s, tree[0])) {
            crossing.push_back(s);
            crossing.push_back(u.inv(s));
            found = true;
        }
    if (found)
        CHECK(has_check(oracle::verify_tree(crossing, ts, u), "tree-set"));

    CHECK(has_check(oracle::verify_tree({SepId(u.size())}, ts, u), "input"));
}

TEST_CASE("verify_tree flags a separation that distinguishes nothing")
{
    const auto & u = *two_triangles().universe;
    auto ts = tangles(u);
    auto tree = tree_of_tangles(u, ts).tree;
    // (abc, abcdef) is nested with the tree but no two profiles disagree on it
    SepId idle = by_label(u, "abc|abcdef");
    tree.push_back(idle);
    tree.push_back(u.inv(idle));
    auto report = oracle::verify_tree(tree, ts, u);
    CHECK_FALSE(report.ok());
}

TEST_CASE("verify_abstract_tree")
{
    fuzz::Rng rng(62);
    std::size_t seen = 0;
    for (int i = 0; i < 300 && seen < 20; ++i) {
        auto sys = fuzz::random_regular_system(rng, 4, 10, "r");
        auto ps = oracle::brute_profiles(sys.system);
        if (ps.size() < 2 || ! is_orderly(sys.system, ps))
            continue;
        ++seen;
        auto tree = abstract_tree_set(sys.system, ps);
        CHECK(oracle::verify_abstract_tree(tree, ps, sys.system).ok());
        CHECK(has_check(oracle::verify_abstract_tree({}, ps, sys.system), "distinguishes-all"));
        CHECK(has_check(oracle::verify_abstract_tree({SepId(sys.system.id_space())}, ps, sys.system), "input"));
    }
    CHECK(seen == 20);
}

TEST_CASE("brute good images are nested with every image")
{
    fuzz::Rng rng(63);
    for (int i = 0; i < 30; ++i) {
        auto sys = fuzz::random_regular_system(rng, 4, 10, "r");
        auto ps = oracle::brute_profiles(sys.system);
        for (const auto & a : oracle::brute_good_images(sys.system, ps)) {
            CHECK(a.any());
            CHECK_FALSE(a.all());
            for (SepId s : sys.system.elements())
                CHECK(images_nested(a, f_image(sys.system, s, ps)));
        }
    }
}
