#include <sepsys/regularization.hh>
#include <sepsys/quotient.hh>

namespace sepsys {

CornerStrategy parse_corner_strategy(const std::string & name)
{
    if (name == "induced")
        return CornerStrategy::induced;
    if (name == "poset_sup")
        return CornerStrategy::poset_sup;
    if (name == "comparable")
        return CornerStrategy::comparable;
    throw input_error("unknown corner strategy '" + name + "'");
}

std::string to_string(CornerStrategy strategy)
{
    switch (strategy) {
        case CornerStrategy::induced: return "induced";
        case CornerStrategy::poset_sup: return "poset_sup";
        case CornerStrategy::comparable: return "comparable";
    }
    return "?";
}

namespace
{
    std::optional<SepId> least_of(const CornerSystem & sys, const Bits & upper)
    {
        for (auto u = upper.find_first(); u != Bits::npos; u = upper.find_next(u))
            if (upper.is_subset_of(sys.up_set(SepId(u))))
                return SepId(u);
        return std::nullopt;
    }
}

CornerSystem with_corner_strategy(const CornerSystem & sys, CornerStrategy strategy)
{
    auto inv = [&](SepId s) { return sys.inv(s); };
    auto leq = [&](SepId s, SepId t) { return sys.leq(s, t); };
    switch (strategy) {
        case CornerStrategy::induced:
            return sys;
        case CornerStrategy::poset_sup:
            return CornerSystem::build(sys.id_space(), sys.elements(), inv, leq,
                    [&](SepId s, SepId t) { return least_of(sys, sys.up_set(s) & sys.up_set(t)); },
                    sys.universe());
        case CornerStrategy::comparable:
            return CornerSystem::build(sys.id_space(), sys.elements(), inv, leq,
                    [&](SepId s, SepId t) -> std::optional<SepId> {
                        if (sys.leq(s, t))
                            return t;
                        if (sys.leq(t, s))
                            return s;
                        return std::nullopt;
                    },
                    sys.universe());
    }
    throw precondition_error("unknown corner strategy");
}

CornerSystem make_corner_system(const SubSystem & sub, CornerStrategy strategy)
{
    if (! sub.universe)
        throw precondition_error("make_corner_system: subsystem has no universe");
    return with_corner_strategy(induced_corner_system(*sub.universe, sub.members), strategy);
}

CornerSystem restrict_system(const CornerSystem & sys, const Bits & keep)
{
    std::vector<SepId> kept;
    for (SepId s : sys.elements())
        if (keep.test(s))
            kept.push_back(s);
    return CornerSystem::build(sys.id_space(), kept,
            [&](SepId s) { return sys.inv(s); },
            [&](SepId s, SepId t) { return sys.leq(s, t); },
            [&](SepId s, SepId t) -> std::optional<SepId> {
                auto c = sys.corner(s, t);
                if (c && keep.test(*c))
                    return c;
                return std::nullopt;
            },
            sys.universe());
}

CornerSystem essential_core(const CornerSystem & sys)
{
    Bits keep(sys.id_space());
    for (SepId s : sys.elements()) {
        auto c = classify(sys, s);
        if (! c.degenerate && ! c.trivial && ! c.cotrivial)
            keep.set(s);
    }
    return restrict_system(sys, keep);
}

RegularizationResult regularize(const CornerSystem & sys, const ProfileSet & profiles)
{
    RegularizationResult r;
    r.original = sys;
    r.core = essential_core(sys);

    for (SepId s : sys.elements())
        if (! r.core.contains(s))
            r.removed.push_back(s);
    for (SepId s : r.core.elements())
        if (r.core.leq(s, r.core.inv(s)))
            r.dropped_relations.emplace_back(s, r.core.inv(s));

    const CornerSystem & core = r.core;
    auto inv = [&](SepId s) { return core.inv(s); };
    auto leq_reg = [&](SepId s, SepId t) { return core.leq(s, t) && s != core.inv(t); };

    // First pass only fixes ≤' so that suprema can be tested against it.
    auto order_only = CornerSystem::build(core.id_space(), core.elements(), inv, leq_reg,
            [](SepId, SepId) -> std::optional<SepId> { return std::nullopt; }, core.universe());

    r.regular = CornerSystem::build(core.id_space(), core.elements(), inv, leq_reg,
            [&](SepId s, SepId t) -> std::optional<SepId> {
                auto c = core.corner(s, t);
                if (! c)
                    return std::nullopt;
                Bits upper = order_only.up_set(s) & order_only.up_set(t);
                if (upper.test(*c) && upper.is_subset_of(order_only.up_set(*c)))
                    return c;
                return std::nullopt;
            },
            core.universe());

    std::vector<Profile> projected;
    for (const auto & p : profiles)
        projected.push_back(Profile{p.chosen & r.regular.member_bits(), p.order});
    r.projected_profiles = ProfileSet(std::move(projected));
    return r;
}

std::vector<SepId> tree_set_nonregular(const CornerSystem & sys, const ProfileSet & profiles)
{
    if (profiles.size() <= 1)
        return {};
    if (auto check = check_orderly(sys, profiles); ! check.orderly)
        throw hypothesis_violation("tree_set_nonregular: system is not orderly, witness ("
                + std::to_string(check.witness->first) + "," + std::to_string(check.witness->second) + ")");
    auto r = regularize(sys, profiles);
    if (r.projected_profiles.size() != profiles.size())
        throw hypothesis_violation("tree_set_nonregular: distinct profiles collapsed under regularization");
    return abstract_tree_set(r.regular, r.projected_profiles);
}

}
