#ifndef SEPSYS_PROFILES_HH
#define SEPSYS_PROFILES_HH

#include <sepsys/core.hh>

#include <optional>
#include <vector>

namespace sepsys {

// A consistent orientation with the profile property. `chosen` is indexed by
// the ambient id space; `order` is k for a profile of S_k.
struct Profile
{
    Bits chosen;
    std::optional<int> order;

    bool contains(SepId s) const { return s < chosen.size() && chosen.test(s); }
    bool orients(SepId s, SepId s_inv) const { return contains(s) || contains(s_inv); }
    std::vector<SepId> ids() const { return to_ids(chosen); }
};

// Lexicographic on the ascending id sequence.
bool canonical_less(const Profile & a, const Profile & b);

// Profiles deduplicated by chosen set, kept in canonical order. When two
// profiles have the same chosen set the larger order tag wins.
class ProfileSet
{
    public:
        ProfileSet() = default;
        explicit ProfileSet(std::vector<Profile> ps);

        void insert(Profile p);

        std::size_t size() const { return profiles_.size(); }
        bool empty() const { return profiles_.empty(); }
        const Profile & operator[] (std::size_t i) const { return profiles_[i]; }
        auto begin() const { return profiles_.begin(); }
        auto end() const { return profiles_.end(); }
        const std::vector<Profile> & profiles() const { return profiles_; }

        std::optional<std::size_t> index_of(const Bits & chosen) const;

        bool same_sets(const ProfileSet & other) const;

    private:
        std::vector<Profile> profiles_;
};

// Profile property on an orientation (consistency included).
bool is_profile(const CornerSystem & sys, const Bits & chosen);

struct EnumerateOptions
{
    // Prune every branch that picks a co-small separation.
    bool regular_only = false;
};

// All profiles of the system, by backtracking over involution pairs with
// down-closure and corner propagation. Empty if the system has a degenerate
// element. `fixed` (if given) is forced into every result.
ProfileSet enumerate_profiles(const CornerSystem & sys, const EnumerateOptions & options = {},
        const Bits * fixed = nullptr);

// All k-profiles of a universe, tagged with order k.
ProfileSet enumerate_k_profiles(const Universe & u, int k, const EnumerateOptions & options = {});

struct UniverseProfileOptions
{
    bool regular_only = false;
    bool robust_only = false;
};

// Profiles of every order 0..max_order. Built level by level: each
// (k+1)-profile induces a k-profile, and regularity and robustness pass down
// to induced profiles, so higher levels only extend surviving lower ones.
std::vector<ProfileSet> enumerate_profiles_by_order(const Universe & u, int max_order,
        const UniverseProfileOptions & options = {});

// Union of the per-order sets above.
ProfileSet enumerate_universe_profiles(const Universe & u, int max_order,
        const UniverseProfileOptions & options = {});

// P ∩ S_l.
Profile induced(const Universe & u, const Profile & p, int l);

bool distinguishes(SepId s, SepId s_inv, const Profile & p, const Profile & q);

// Smallest order of a separation distinguishing p and q, or nothing.
std::optional<int> min_distinguishing_order(const Universe & u, const Profile & p, const Profile & q);

enum class Distinction { no, yes_inefficient, yes_efficient };

Distinction distinguishes_efficiently(const Universe & u, SepId s, const Profile & p, const Profile & q);

bool is_robust(const Universe & u, const Profile & p);

// No co-small element.
template <SeparationOrder S>
bool is_regular_profile(const S & sys, const Profile & p)
{
    for (auto i = p.chosen.find_first(); i != Bits::npos; i = p.chosen.find_next(i))
        if (sys.leq(sys.inv(SepId(i)), SepId(i)))
            return false;
    return true;
}

// On finite systems every chain has a maximum, which is its supremum and
// already lies in the profile; what remains is that the profile lives
// inside the system.
bool is_closed(const CornerSystem & sys, const Profile & p);
bool is_closed(const Universe & u, const Profile & p);

// Given r efficiently distinguishing two robust profiles and s efficiently
// distinguishing robust q1, q2 with |r| < |s|, one of r∧s, r∧s*, r*∧s,
// r*∧s* efficiently distinguishes q1, q2. Returns the first that does.
SepId robust_corner(const Universe & u, SepId r, SepId s, const Profile & q1, const Profile & q2);

}

#endif
