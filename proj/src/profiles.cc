#include <sepsys/profiles.hh>

#include <algorithm>
#include <sstream>

namespace sepsys {

bool canonical_less(const Profile & a, const Profile & b)
{
    auto ia = a.chosen.find_first(), ib = b.chosen.find_first();
    while (ia != Bits::npos && ib != Bits::npos) {
        if (ia != ib)
            return ia < ib;
        ia = a.chosen.find_next(ia);
        ib = b.chosen.find_next(ib);
    }
    if (ia == Bits::npos && ib == Bits::npos)
        return a.order.value_or(-1) < b.order.value_or(-1);
    return ia == Bits::npos;
}

ProfileSet::ProfileSet(std::vector<Profile> ps)
{
    for (auto & p : ps)
        insert(std::move(p));
}

void ProfileSet::insert(Profile p)
{
    for (auto & q : profiles_)
        if (q.chosen == p.chosen) {
            if (p.order.value_or(-1) > q.order.value_or(-1))
                q.order = p.order;
            return;
        }
    auto pos = std::lower_bound(profiles_.begin(), profiles_.end(), p, canonical_less);
    profiles_.insert(pos, std::move(p));
}

std::optional<std::size_t> ProfileSet::index_of(const Bits & chosen) const
{
    for (std::size_t i = 0; i < profiles_.size(); ++i)
        if (profiles_[i].chosen == chosen)
            return i;
    return std::nullopt;
}

bool ProfileSet::same_sets(const ProfileSet & other) const
{
    if (size() != other.size())
        return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (profiles_[i].chosen != other.profiles_[i].chosen)
            return false;
    return true;
}

bool is_profile(const CornerSystem & sys, const Bits & chosen)
{
    if (chosen.size() != sys.id_space() || ! is_orientation(sys, chosen))
        return false;
    auto ids = to_ids(chosen);
    if (! is_consistent(sys, ids))
        return false;
    for (SepId s : ids)
        for (SepId t : ids)
            if (auto c = sys.corner(s, t); c && chosen.test(sys.inv(*c)))
                return false;
    return true;
}

namespace
{
    class ProfileSearch
    {
        public:
            ProfileSearch(const CornerSystem & sys, const EnumerateOptions & options) :
                sys_(sys), options_(options)
            {
                for (SepId s : sys.elements())
                    if (s < sys.inv(s))
                        reps_.push_back(s);
                if (sys.universe() && sys.universe()->has_order()) {
                    const Universe & u = *sys.universe();
                    std::stable_sort(reps_.begin(), reps_.end(), [&](SepId a, SepId b) {
                            return u.order(a) < u.order(b);
                            });
                }
            }

            ProfileSet run(const Bits * fixed)
            {
                for (SepId s : sys_.elements())
                    if (sys_.inv(s) == s)
                        return {};

                State st{Bits(sys_.id_space()), {}};
                if (fixed)
                    for (auto i = fixed->find_first(); i != Bits::npos; i = fixed->find_next(i)) {
                        if (! sys_.contains(SepId(i)))
                            throw precondition_error("enumerate_profiles: fixed separation outside the system");
                        if (! choose(st, SepId(i)))
                            return {};
                    }
                search(std::move(st), 0);
                return ProfileSet(std::move(found_));
            }

        private:
            struct State
            {
                Bits chosen;
                std::vector<SepId> list;
            };

            // Choose x and everything it forces: the down-closure of x (minus
            // its own pair) by consistency, and every corner with an
            // already-chosen separation by the profile property.
            bool choose(State & st, SepId first)
            {
                std::vector<SepId> work{first};
                while (! work.empty()) {
                    SepId x = work.back();
                    work.pop_back();
                    if (st.chosen.test(x))
                        continue;
                    SepId xi = sys_.inv(x);
                    if (st.chosen.test(xi))
                        return false;
                    if (options_.regular_only && sys_.leq(xi, x))
                        return false;
                    st.chosen.set(x);
                    st.list.push_back(x);

                    const Bits & down = sys_.down_set(x);
                    for (auto y = down.find_first(); y != Bits::npos; y = down.find_next(y)) {
                        if (y == x || y == xi)
                            continue;
                        if (st.chosen.test(sys_.inv(SepId(y))))
                            return false;
                        if (! st.chosen.test(y))
                            work.push_back(SepId(y));
                    }
                    for (SepId p : st.list) {
                        auto c = sys_.corner(p, x);
                        if (! c)
                            continue;
                        if (st.chosen.test(sys_.inv(*c)))
                            return false;
                        if (! st.chosen.test(*c))
                            work.push_back(*c);
                    }
                }
                return true;
            }

            void search(State st, std::size_t next)
            {
                while (next < reps_.size() && (st.chosen.test(reps_[next]) || st.chosen.test(sys_.inv(reps_[next]))))
                    ++next;
                if (next == reps_.size()) {
                    found_.push_back(Profile{std::move(st.chosen), std::nullopt});
                    return;
                }
                SepId s = reps_[next];
                for (SepId x : {s, sys_.inv(s)}) {
                    State branch = st;
                    if (choose(branch, x))
                        search(std::move(branch), next + 1);
                }
            }

            const CornerSystem & sys_;
            EnumerateOptions options_;
            std::vector<SepId> reps_;
            std::vector<Profile> found_;
    };
}

ProfileSet enumerate_profiles(const CornerSystem & sys, const EnumerateOptions & options, const Bits * fixed)
{
    return ProfileSearch(sys, options).run(fixed);
}

ProfileSet enumerate_k_profiles(const Universe & u, int k, const EnumerateOptions & options)
{
    auto sys = induced_corner_system(u, subsystem_k(u, k).members);
    std::vector<Profile> tagged;
    for (const auto & p : enumerate_profiles(sys, options))
        tagged.push_back(Profile{p.chosen, k});
    return ProfileSet(std::move(tagged));
}

std::vector<ProfileSet> enumerate_profiles_by_order(const Universe & u, int max_order,
        const UniverseProfileOptions & options)
{
    std::vector<ProfileSet> levels;
    EnumerateOptions eo{options.regular_only};

    auto keep = [&](const Profile & p) {
        return ! options.robust_only || is_robust(u, p);
    };

    {
        std::vector<Profile> level0;
        for (const auto & p : enumerate_k_profiles(u, 0, eo))
            if (keep(p))
                level0.push_back(p);
        levels.emplace_back(std::move(level0));
    }
    for (int k = 1; k <= max_order; ++k) {
        auto sys = induced_corner_system(u, subsystem_k(u, k).members);
        std::vector<Profile> level;
        for (const auto & base : levels.back())
            for (const auto & p : enumerate_profiles(sys, eo, &base.chosen)) {
                Profile tagged{p.chosen, k};
                if (keep(tagged))
                    level.push_back(std::move(tagged));
            }
        levels.emplace_back(std::move(level));
    }
    return levels;
}

ProfileSet enumerate_universe_profiles(const Universe & u, int max_order, const UniverseProfileOptions & options)
{
    ProfileSet all;
    for (const auto & level : enumerate_profiles_by_order(u, max_order, options))
        for (const auto & p : level)
            all.insert(p);
    return all;
}

Profile induced(const Universe & u, const Profile & p, int l)
{
    if (! p.order)
        throw precondition_error("induced: profile has no order");
    if (l > *p.order)
        throw precondition_error("induced: l = " + std::to_string(l) + " exceeds the profile order "
                + std::to_string(*p.order));
    if (l < 0)
        throw precondition_error("induced: l must be non-negative");
    return Profile{p.chosen & subsystem_k(u, l).members, l};
}

bool distinguishes(SepId s, SepId s_inv, const Profile & p, const Profile & q)
{
    if (s == s_inv)
        return false;
    return (p.contains(s) && q.contains(s_inv)) || (p.contains(s_inv) && q.contains(s));
}

namespace
{
    void check_same_universe(const Universe & u, const Profile & p, const Profile & q)
    {
        if (p.chosen.size() != u.size() || q.chosen.size() != u.size())
            throw precondition_error("profiles are not over this universe");
    }
}

std::optional<int> min_distinguishing_order(const Universe & u, const Profile & p, const Profile & q)
{
    check_same_universe(u, p, q);
    std::optional<int> best;
    for (auto s = p.chosen.find_first(); s != Bits::npos; s = p.chosen.find_next(s)) {
        SepId si = u.inv(SepId(s));
        if (distinguishes(SepId(s), si, p, q) && (! best || u.order(SepId(s)) < *best))
            best = u.order(SepId(s));
    }
    return best;
}

Distinction distinguishes_efficiently(const Universe & u, SepId s, const Profile & p, const Profile & q)
{
    check_same_universe(u, p, q);
    if (! distinguishes(s, u.inv(s), p, q))
        return Distinction::no;
    auto best = min_distinguishing_order(u, p, q);
    return (best && u.order(s) == *best) ? Distinction::yes_efficient : Distinction::yes_inefficient;
}

bool is_robust(const Universe & u, const Profile & p)
{
    for (auto r = p.chosen.find_first(); r != Bits::npos; r = p.chosen.find_next(r)) {
        SepId ri = u.inv(SepId(r));
        int ord_r = u.order(SepId(r));
        for (SepId s = 0; s < u.size(); ++s) {
            SepId a = u.meet(ri, s), b = u.meet(ri, u.inv(s));
            if (u.order(a) < ord_r && u.order(b) < ord_r && p.contains(a) && p.contains(b))
                return false;
        }
    }
    return true;
}

bool is_closed(const CornerSystem & sys, const Profile & p)
{
    return p.chosen.size() == sys.id_space() && p.chosen.is_subset_of(sys.member_bits());
}

bool is_closed(const Universe & u, const Profile & p)
{
    return p.chosen.size() == u.size();
}

SepId robust_corner(const Universe & u, SepId r, SepId s, const Profile & q1, const Profile & q2)
{
    if (u.order(r) >= u.order(s))
        throw precondition_error("robust_corner: need |r| < |s|");
    if (distinguishes_efficiently(u, s, q1, q2) != Distinction::yes_efficient)
        throw precondition_error("robust_corner: s does not efficiently distinguish the given profiles");

    SepId ri = u.inv(r), si = u.inv(s);
    for (SepId c : {u.meet(r, s), u.meet(r, si), u.meet(ri, s), u.meet(ri, si)})
        if (distinguishes_efficiently(u, c, q1, q2) == Distinction::yes_efficient)
            return c;

    std::ostringstream msg;
    msg << "robust_corner: no corner of r=" << r << " and s=" << s
        << " efficiently distinguishes the profiles (non-robust input?)";
    throw hypothesis_violation(msg.str());
}

}
