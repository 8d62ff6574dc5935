#ifndef SEPSYS_REGULARIZATION_HH
#define SEPSYS_REGULARIZATION_HH

#include <sepsys/core.hh>
#include <sepsys/profiles.hh>

#include <string>
#include <utility>
#include <vector>

namespace sepsys {

enum class CornerStrategy
{
    induced,     // join of the surrounding universe, when it stays inside
    poset_sup,   // supremum within the member set, when one exists
    comparable   // only for comparable pairs
};

CornerStrategy parse_corner_strategy(const std::string & name);
std::string to_string(CornerStrategy strategy);

CornerSystem make_corner_system(const SubSystem & sub, CornerStrategy strategy);

// Same elements, order and involution, corner map replaced per strategy.
// `induced` keeps the existing corner map.
CornerSystem with_corner_strategy(const CornerSystem & sys, CornerStrategy strategy);

// Restrict to the elements in `keep`, which must be inv-closed. Corners
// survive when their value is kept.
CornerSystem restrict_system(const CornerSystem & sys, const Bits & keep);

// Drop every degenerate, trivial and co-trivial element (judged in sys).
CornerSystem essential_core(const CornerSystem & sys);

struct RegularizationResult
{
    CornerSystem original;
    CornerSystem core;
    CornerSystem regular;
    // S' lives in the same id space as S, so the element map is the identity.
    std::vector<SepId> removed;
    std::vector<std::pair<SepId, SepId>> dropped_relations;
    ProfileSet projected_profiles;
};

// Essential core, then drop every relation s ≤ s*, keeping only the corners
// that are still ≤'-suprema. Profiles, if given, are projected to P ∩ S'.
RegularizationResult regularize(const CornerSystem & sys, const ProfileSet & profiles = {});

// Regularize and run abstract_tree_set on (S', P'); the result is a subset of
// S distinguishing the original profiles.
std::vector<SepId> tree_set_nonregular(const CornerSystem & sys, const ProfileSet & profiles);

}

#endif
