#ifndef SEPSYS_TANGLETREE_HH
#define SEPSYS_TANGLETREE_HH

#include <sepsys/core.hh>
#include <sepsys/profiles.hh>

#include <vector>

namespace sepsys {

// Profiles of order at most k induced by members of the set: members of
// order ≤ k are kept, the rest are cut down to S_k.
ProfileSet induced_set(const Universe & u, const ProfileSet & profiles, int k);

// One step of the inductive construction. `tree` is T_k (closed under
// inversion), `profiles` is P_k.
struct LevelState
{
    int k = 0;
    std::vector<SepId> tree;
    ProfileSet profiles;
};

// Everything the level-k step needs around one k-profile P.
struct FocusContext
{
    Profile profile;
    // (k+1)-profiles inducing P.
    ProfileSet successors;
    // Maximal elements of P ∩ T_k.
    std::vector<SepId> maximal;
    // Separations all of `maximal` point towards.
    Bits region;
    // region was closed under join and meet on this instance.
    bool region_is_sublattice = true;

    int k() const { return *profile.order; }
};

FocusContext focus(const Universe & u, const Profile & p, const LevelState & state, const ProfileSet & profiles);

// A separation of the focus region with the same image as r under the
// successor profiles; follows the smallest-element / maximal-element
// construction and throws if the result does not lie in the region.
SepId find_focus_distinguisher(const Universe & u, SepId r, const FocusContext & ctx);

LevelState build_level(const Universe & u, const LevelState & state, const ProfileSet & profiles);

// t efficiently distinguishes profiles `first` and `second` (indices into the
// input profile set).
struct Certificate
{
    SepId sep;
    std::size_t first;
    std::size_t second;
};

struct TreeOfTangles
{
    std::vector<SepId> tree;
    std::vector<Certificate> certificates;
    std::vector<LevelState> levels;
};

// Profiles must carry their order and be regular and robust.
TreeOfTangles tree_of_tangles(const Universe & u, const ProfileSet & profiles);

}

#endif
