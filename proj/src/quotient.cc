#include <sepsys/quotient.hh>

#include <algorithm>
#include <map>
#include <sstream>

namespace sepsys {

bool images_nested(const ImageSeparation & a, const ImageSeparation & b)
{
    return a.is_subset_of(b) || ! a.intersects(b) || (a | b).all() || b.is_subset_of(a);
}

namespace
{
    std::map<ImageSeparation, std::vector<SepId>> fiber_map(const CornerSystem & sys, const ProfileSet & profiles)
    {
        std::map<ImageSeparation, std::vector<SepId>> result;
        for (SepId s : sys.elements())
            result[f_image(sys, s, profiles)].push_back(s);
        return result;
    }

    std::string show(const ImageSeparation & a)
    {
        std::ostringstream o;
        o << "{";
        bool first = true;
        for (auto i = a.find_first(); i != Bits::npos; i = a.find_next(i)) {
            o << (first ? "" : ",") << "P" << i;
            first = false;
        }
        o << "}";
        return o.str();
    }
}

std::vector<Fiber> fibers(const CornerSystem & sys, const ProfileSet & profiles)
{
    std::vector<Fiber> result;
    for (auto & [image, members] : fiber_map(sys, profiles))
        result.push_back(Fiber{image, members});
    return result;
}

bool is_weakly_submodular(const CornerSystem & sys, const ProfileSet & profiles)
{
    const auto & els = sys.elements();
    std::vector<ImageSeparation> images;
    for (SepId s : els)
        images.push_back(f_image(sys, s, profiles));
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j)
            if (images[i].is_subset_of(images[j]) && ! sys.corner(els[i], els[j]) && ! sys.corner_meet(els[i], els[j]))
                return false;
    return true;
}

OrderlyCheck check_orderly(const CornerSystem & sys, const ProfileSet & profiles)
{
    // holders[s] = profiles containing s
    std::vector<Bits> holders(sys.id_space());
    for (SepId s : sys.elements()) {
        holders[s] = Bits(profiles.size());
        for (std::size_t i = 0; i < profiles.size(); ++i)
            if (profiles[i].contains(s))
                holders[s].set(i);
    }
    for (SepId s : sys.elements())
        for (SepId t : sys.elements()) {
            SepId si = sys.inv(s), ti = sys.inv(t);
            if (! holders[s].intersects(holders[t]) || ! holders[si].intersects(holders[ti]))
                continue;
            if (! sys.corner(s, t) || ! sys.corner(si, ti))
                return OrderlyCheck{false, std::pair{s, t}};
        }
    return {};
}

bool is_orderly(const CornerSystem & sys, const ProfileSet & profiles)
{
    return check_orderly(sys, profiles).orderly;
}

std::vector<ImageSeparation> good_image_tree_set(const CornerSystem & sys, const ProfileSet & profiles)
{
    std::vector<ImageSeparation> images;
    for (auto & [image, members] : fiber_map(sys, profiles))
        images.push_back(image);

    std::vector<ImageSeparation> good;
    for (const auto & a : images) {
        if (a.none() || a.all())
            continue;
        if (std::all_of(images.begin(), images.end(), [&](const auto & b) { return images_nested(a, b); }))
            good.push_back(a);
    }
    return good;
}

SepId separator_for(const Profile & p, const Profile & q, const CornerSystem & sys, const ProfileSet & profiles)
{
    if (p.chosen == q.chosen)
        throw precondition_error("separator_for: the two profiles are equal");
    if (! profiles.index_of(p.chosen) || ! profiles.index_of(q.chosen))
        throw precondition_error("separator_for: profiles must belong to the profile set");
    if (auto check = check_orderly(sys, profiles); ! check.orderly)
        throw hypothesis_violation("separator_for: system is not orderly, witness ("
                + std::to_string(check.witness->first) + "," + std::to_string(check.witness->second) + ")");

    std::vector<SepId> candidates;
    for (SepId x : sys.elements())
        if (p.contains(x) && ! q.contains(x))
            candidates.push_back(x);
    if (candidates.empty())
        throw precondition_error("separator_for: p has no separation outside q");

    // A maximal chain of candidates has a supremum; on a finite set that is
    // just a maximal candidate.
    SepId s = maximal_elements(sys, candidates).front();
    auto good = good_image_tree_set(sys, profiles);
    if (std::find(good.begin(), good.end(), f_image(sys, s, profiles)) == good.end())
        throw hypothesis_violation("separator_for: maximal separator " + std::to_string(s) + " has a crossed image");
    return s;
}

SepId greatest_in_fiber(const Fiber & fiber, const CornerSystem & sys, const ProfileSet &)
{
    if (fiber.members.empty())
        throw precondition_error("greatest_in_fiber: empty fiber");
    SepId g = maximal_elements(sys, fiber.members).front();
    for (SepId x : fiber.members)
        if (! sys.leq(x, g))
            throw hypothesis_violation("greatest_in_fiber: maximal element " + std::to_string(g)
                    + " does not dominate " + std::to_string(x) + " in fiber " + show(fiber.image));
    return g;
}

LiftedTreeSet lift_tree_set(const std::vector<ImageSeparation> & image_tree, const CornerSystem & sys,
        const ProfileSet & profiles, std::size_t anchor)
{
    if (anchor >= profiles.size())
        throw precondition_error("lift_tree_set: anchor profile out of range");

    LiftedTreeSet out;
    for (const auto & a : image_tree) {
        if (a.size() != profiles.size())
            throw precondition_error("lift_tree_set: image over a different profile set");
        for (const auto & x : {a, ~a})
            if (std::find(out.image_tree.begin(), out.image_tree.end(), x) == out.image_tree.end())
                out.image_tree.push_back(x);
    }
    std::sort(out.image_tree.begin(), out.image_tree.end());

    for (const auto & a : out.image_tree) {
        if (a.none() || a.all())
            throw precondition_error("lift_tree_set: empty or full image is not a tree set element");
        for (const auto & b : out.image_tree)
            if (! images_nested(a, b))
                throw precondition_error("lift_tree_set: images " + show(a) + " and " + show(b) + " cross");
    }

    auto by_image = fiber_map(sys, profiles);
    std::map<ImageSeparation, SepId> greatest;
    auto m = [&](const ImageSeparation & a) {
        if (auto it = greatest.find(a); it != greatest.end())
            return it->second;
        auto it = by_image.find(a);
        if (it == by_image.end())
            throw precondition_error("lift_tree_set: image " + show(a) + " has an empty fiber");
        SepId g = greatest_in_fiber(Fiber{a, it->second}, sys, profiles);
        greatest.emplace(a, g);
        return g;
    };

    std::map<ImageSeparation, SepId> lifted;
    for (const auto & a : out.image_tree) {
        bool in_o = ! a.test(anchor);
        if (in_o)
            out.orientation.push_back(a);
        SepId rep = in_o ? sys.inv(m(~a)) : m(a);
        if (f_image(sys, rep, profiles) != a)
            throw hypothesis_violation("lift_tree_set: representative " + std::to_string(rep)
                    + " does not map back to " + show(a));
        lifted.emplace(a, rep);
        out.lifted.emplace_back(a, rep);
        out.result.push_back(rep);
    }

    for (const auto & a : out.image_tree)
        for (const auto & b : out.image_tree)
            if (a.is_subset_of(b) && ! sys.leq(lifted[a], lifted[b]))
                throw hypothesis_violation("lift_tree_set: lift is not order-preserving on " + show(a)
                        + " <= " + show(b));

    std::sort(out.result.begin(), out.result.end());
    out.result.erase(std::unique(out.result.begin(), out.result.end()), out.result.end());
    return out;
}

std::vector<SepId> abstract_tree_set(const CornerSystem & sys, const ProfileSet & profiles)
{
    if (profiles.size() <= 1)
        return {};
    if (! is_regular_system(sys))
        throw precondition_error("abstract_tree_set: system is not regular (use tree_set_nonregular)");
    for (const auto & p : profiles)
        if (! is_closed(sys, p))
            throw precondition_error("abstract_tree_set: profile is not a closed profile of the system");
    if (auto check = check_orderly(sys, profiles); ! check.orderly)
        throw hypothesis_violation("abstract_tree_set: system is not orderly, witness ("
                + std::to_string(check.witness->first) + "," + std::to_string(check.witness->second) + ")");

    auto good = good_image_tree_set(sys, profiles);
    for (std::size_t i = 0; i < profiles.size(); ++i)
        for (std::size_t j = i + 1; j < profiles.size(); ++j)
            if (std::none_of(good.begin(), good.end(), [&](const auto & a) { return a.test(i) != a.test(j); }))
                throw hypothesis_violation("abstract_tree_set: no good image separates profiles "
                        + std::to_string(i) + " and " + std::to_string(j));

    return lift_tree_set(good, sys, profiles, 0).result;
}

}
