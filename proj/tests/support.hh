#ifndef SEPSYS_TESTS_SUPPORT_HH
#define SEPSYS_TESTS_SUPPORT_HH

#include <sepsys/fuzz.hh>
#include <sepsys/io.hh>
#include <sepsys/profiles.hh>
#include <sepsys/regularization.hh>

#include <doctest.h>

#include <string>
#include <vector>

namespace testing {

using namespace sepsys;

inline const std::string fixtures = SEPSYS_FIXTURES;

inline io::Instance fixture(const std::string & file)
{
    return io::materialize(io::load_instance(fixtures + "/" + file));
}

inline const io::Instance & two_triangles()
{
    static const io::Instance inst = io::materialize(io::inst_2tri());
    return inst;
}

inline const io::Instance & k4_pair()
{
    static const io::Instance inst = io::materialize(io::inst_k4pair());
    return inst;
}

inline const Universe & set4()
{
    static const Universe u = io::build_powerset_universe(4);
    return u;
}

inline SepId by_label(const Universe & u, const std::string & label)
{
    for (SepId s = 0; s < u.size(); ++s)
        if (u.label(s) == label)
            return s;
    FAIL("no separation labelled " << label);
    return no_sep;
}

// Subset of the powerset universe given as 1-based elements.
inline SepId subset(std::initializer_list<int> xs)
{
    SepId mask = 0;
    for (int x : xs)
        mask |= SepId(1) << (x - 1);
    return mask;
}

inline CornerSystem level(const Universe & u, int k)
{
    return induced_corner_system(u, subsystem_k(u, k).members);
}

// All regular robust profiles of every order.
inline ProfileSet tangles(const Universe & u)
{
    return enumerate_universe_profiles(u, u.max_order(), {.regular_only = true, .robust_only = true});
}

inline std::vector<Universe> random_graph_universes(std::uint64_t seed, int count, int max_vertices)
{
    fuzz::Rng rng(seed);
    std::vector<Universe> out;
    for (int i = 0; i < count; ++i) {
        auto spec = fuzz::random_connected_graph(rng, 2, max_vertices, "g");
        out.push_back(io::build_graph_universe(spec.vertices, spec.edges));
    }
    return out;
}

// The inv-closure of the given representatives as a corner system.
inline CornerSystem family(const Universe & u, const std::vector<SepId> & reps, CornerStrategy strategy)
{
    Bits members(u.size());
    for (SepId s : reps) {
        members.set(s);
        members.set(u.inv(s));
    }
    return make_corner_system(SubSystem{&u, members}, strategy);
}

}

#endif
