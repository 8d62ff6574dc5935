#ifndef SEPSYS_QUOTIENT_HH
#define SEPSYS_QUOTIENT_HH

#include <sepsys/core.hh>
#include <sepsys/profiles.hh>

#include <optional>
#include <utility>
#include <vector>

namespace sepsys {

// A subset of a profile set, bit i standing for profile i in canonical
// order. Inverse is complement, order is inclusion.
using ImageSeparation = Bits;

// {P : s* ∈ P}. Every profile has to orient s.
template <SeparationOrder S>
ImageSeparation f_image(const S & sys, SepId s, const ProfileSet & profiles)
{
    ImageSeparation image(profiles.size());
    SepId si = sys.inv(s);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto & p = profiles[i];
        if (! p.orients(s, si))
            throw precondition_error("f_image: profile " + std::to_string(i) + " does not orient "
                    + std::to_string(s));
        if (p.contains(si))
            image.set(i);
    }
    return image;
}

bool images_nested(const ImageSeparation & a, const ImageSeparation & b);

struct Fiber
{
    ImageSeparation image;
    std::vector<SepId> members;
};

// Fibers of f over all of S, ordered by image.
std::vector<Fiber> fibers(const CornerSystem & sys, const ProfileSet & profiles);

bool is_weakly_submodular(const CornerSystem & sys, const ProfileSet & profiles);

struct OrderlyCheck
{
    bool orderly = true;
    std::optional<std::pair<SepId, SepId>> witness;
};

// Whenever some profile holds {s, t} and some profile holds {s*, t*}, both
// s ∨ t and s* ∨ t* must exist.
OrderlyCheck check_orderly(const CornerSystem & sys, const ProfileSet & profiles);
bool is_orderly(const CornerSystem & sys, const ProfileSet & profiles);

// Images nested with every image, minus ∅ and the full set.
std::vector<ImageSeparation> good_image_tree_set(const CornerSystem & sys, const ProfileSet & profiles);

// A separation in p but not in q whose image is good: a maximal element of
// {x ∈ S ∩ p : x ∉ q}.
SepId separator_for(const Profile & p, const Profile & q, const CornerSystem & sys, const ProfileSet & profiles);

// The fiber's greatest element; throws if the maximal element found does not
// dominate the whole fiber.
SepId greatest_in_fiber(const Fiber & fiber, const CornerSystem & sys, const ProfileSet & profiles);

struct LiftedTreeSet
{
    std::vector<ImageSeparation> image_tree;
    std::vector<ImageSeparation> orientation;
    std::vector<std::pair<ImageSeparation, SepId>> lifted;
    std::vector<SepId> result;
};

// Picks representatives m_o for a tree set of images closed under
// complement. The orientation is o = {A : anchor ∉ A}; images in o are lifted
// to m(A*)* and the rest to m(A).
LiftedTreeSet lift_tree_set(const std::vector<ImageSeparation> & image_tree, const CornerSystem & sys,
        const ProfileSet & profiles, std::size_t anchor);

// Tree set in a regular system distinguishing all profiles, every element
// distinguishing some pair. Requires orderliness.
std::vector<SepId> abstract_tree_set(const CornerSystem & sys, const ProfileSet & profiles);

}

#endif
