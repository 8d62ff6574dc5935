#include <sepsys/oracle.hh>

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace sepsys::oracle {

namespace
{
    using Clock = std::chrono::steady_clock;

    double since(Clock::time_point start)
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    // Everything below is stated over a generic order given by callables,
    // so the same definitions serve universes and corner systems.
    template <typename Leq, typename Inv>
    bool crossing(const Leq & leq, const Inv & inv, SepId s, SepId t)
    {
        return ! (leq(s, t) || leq(s, inv(t)) || leq(inv(s), t) || leq(inv(s), inv(t)));
    }

    template <typename Leq, typename Inv>
    std::optional<SepId> triviality_witness(const Leq & leq, const Inv & inv, const std::vector<SepId> & space, SepId s)
    {
        for (SepId t : space) {
            if (t == s || t == inv(s))
                continue;
            if (leq(s, t) && leq(s, inv(t)))
                return t;
        }
        return std::nullopt;
    }

    bool splits(SepId s, SepId si, const Profile & p, const Profile & q)
    {
        if (s == si)
            return false;
        return (p.contains(s) && q.contains(si)) || (p.contains(si) && q.contains(s));
    }

    std::vector<SepId> closed_under(const std::vector<SepId> & tree, const std::function<SepId (SepId)> & inv)
    {
        std::set<SepId> all;
        for (SepId t : tree) {
            all.insert(t);
            all.insert(inv(t));
        }
        return {all.begin(), all.end()};
    }

    template <typename Leq, typename Inv>
    void check_tree_set(VerificationReport & report, const Leq & leq, const Inv & inv,
            const std::vector<SepId> & space, const std::vector<SepId> & tree)
    {
        report.checks.push_back("tree-set");
        for (SepId t : tree) {
            if (t == inv(t))
                report.violations.push_back({"tree-set", "degenerate element " + std::to_string(t)});
            else if (auto w = triviality_witness(leq, inv, space, t))
                report.violations.push_back({"tree-set", "element " + std::to_string(t)
                        + " is trivial, witness " + std::to_string(*w)});
        }
        for (std::size_t i = 0; i < tree.size(); ++i)
            for (std::size_t j = i + 1; j < tree.size(); ++j)
                if (crossing(leq, inv, tree[i], tree[j])) {
                    report.violations.push_back({"tree-set", "elements " + std::to_string(tree[i]) + " and "
                            + std::to_string(tree[j]) + " cross"});
                    return;
                }
    }

    template <typename Leq>
    void check_maximal_elements(VerificationReport & report, const Leq & leq, const std::vector<SepId> & tree,
            const ProfileSet & profiles)
    {
        report.checks.push_back("maximal-element");
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            std::vector<SepId> held;
            for (SepId t : tree)
                if (profiles[i].contains(t))
                    held.push_back(t);
            auto is_max = [&](SepId m) {
                return std::none_of(held.begin(), held.end(), [&](SepId y) { return y != m && leq(m, y); });
            };
            for (SepId h : held)
                if (std::none_of(held.begin(), held.end(), [&](SepId m) { return is_max(m) && leq(h, m); }))
                    report.violations.push_back({"maximal-element", "profile " + std::to_string(i)
                            + ": element " + std::to_string(h) + " lies below no maximal element"});
        }
    }
}

ProfileSet brute_profiles(const CornerSystem & sys, const Limits & limits)
{
    std::vector<SepId> reps;
    for (SepId s : sys.elements()) {
        if (sys.inv(s) == s)
            return {};
        if (s < sys.inv(s))
            reps.push_back(s);
    }
    if (reps.size() > limits.max_pairs)
        throw limit_exceeded("brute_profiles: " + std::to_string(reps.size()) + " involution pairs exceed the limit of "
                + std::to_string(limits.max_pairs));

    std::vector<Profile> found;
    const std::uint64_t total = std::uint64_t(1) << reps.size();
    std::vector<SepId> chosen;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        chosen.clear();
        Bits bits(sys.id_space());
        for (std::size_t i = 0; i < reps.size(); ++i) {
            SepId s = (mask >> i) & 1 ? sys.inv(reps[i]) : reps[i];
            chosen.push_back(s);
            bits.set(s);
        }

        bool ok = true;
        for (SepId p : chosen) {
            for (SepId q : chosen) {
                if (q != p && q != sys.inv(p) && sys.leq(sys.inv(p), q)) {
                    ok = false;
                    break;
                }
                if (auto c = sys.corner(p, q); c && bits.test(sys.inv(*c))) {
                    ok = false;
                    break;
                }
            }
            if (! ok)
                break;
        }
        if (ok)
            found.push_back(Profile{bits, std::nullopt});
    }
    return ProfileSet(std::move(found));
}

std::optional<int> brute_min_order(const Universe & u, const Profile & p, const Profile & q)
{
    std::optional<int> best;
    for (SepId s = 0; s < u.size(); ++s)
        if (splits(s, u.inv(s), p, q) && (! best || u.order(s) < *best))
            best = u.order(s);
    return best;
}

VerificationReport verify_tree(const std::vector<SepId> & tree_in, const ProfileSet & profiles, const Universe & u,
        const std::string & instance)
{
    auto start = Clock::now();
    VerificationReport report;
    report.instance = instance;

    auto leq = [&](SepId a, SepId b) { return u.leq(a, b); };
    auto inv = [&](SepId a) { return u.inv(a); };
    auto tree = closed_under(tree_in, inv);
    for (SepId t : tree)
        if (t >= u.size()) {
            report.violations.push_back({"input", "separation " + std::to_string(t) + " is not in the universe"});
            report.seconds = since(start);
            return report;
        }

    check_tree_set(report, leq, inv, u.elements(), tree);

    const std::size_t n = profiles.size();
    std::vector<std::optional<int>> best(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best[i * n + j] = brute_min_order(u, profiles[i], profiles[j]);

    report.checks.push_back("efficient-distinguishing");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (! best[i * n + j])
                continue;
            bool covered = std::any_of(tree.begin(), tree.end(), [&](SepId t) {
                    return splits(t, u.inv(t), profiles[i], profiles[j]) && u.order(t) == *best[i * n + j];
                    });
            if (! covered) {
                std::ostringstream w;
                w << "profiles " << i << " and " << j << " (min order " << *best[i * n + j]
                  << ") are not efficiently distinguished";
                report.violations.push_back({"efficient-distinguishing", w.str()});
            }
        }

    report.checks.push_back("usefulness");
    for (SepId t : tree) {
        bool useful = false;
        for (std::size_t i = 0; i < n && ! useful; ++i)
            for (std::size_t j = i + 1; j < n && ! useful; ++j)
                useful = splits(t, u.inv(t), profiles[i], profiles[j]) && best[i * n + j] == u.order(t);
        if (! useful)
            report.violations.push_back({"usefulness", "separation " + std::to_string(t)
                    + " efficiently distinguishes no pair"});
    }

    check_maximal_elements(report, leq, tree, profiles);
    report.seconds = since(start);
    return report;
}

VerificationReport verify_abstract_tree(const std::vector<SepId> & tree_in, const ProfileSet & profiles,
        const CornerSystem & sys, const std::string & instance)
{
    auto start = Clock::now();
    VerificationReport report;
    report.instance = instance;

    auto leq = [&](SepId a, SepId b) { return sys.leq(a, b); };
    auto inv = [&](SepId a) { return sys.inv(a); };
    for (SepId t : tree_in)
        if (! sys.contains(t)) {
            report.violations.push_back({"input", "separation " + std::to_string(t) + " is not in the system"});
            report.seconds = since(start);
            return report;
        }
    auto tree = closed_under(tree_in, inv);

    check_tree_set(report, leq, inv, sys.elements(), tree);

    report.checks.push_back("distinguishes-all");
    const std::size_t n = profiles.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (profiles[i].chosen != profiles[j].chosen
                    && std::none_of(tree.begin(), tree.end(), [&](SepId t) {
                            return splits(t, sys.inv(t), profiles[i], profiles[j]); }))
                report.violations.push_back({"distinguishes-all", "profiles " + std::to_string(i) + " and "
                        + std::to_string(j) + " are not distinguished"});

    report.checks.push_back("usefulness");
    for (SepId t : tree) {
        bool useful = false;
        for (std::size_t i = 0; i < n && ! useful; ++i)
            for (std::size_t j = i + 1; j < n && ! useful; ++j)
                useful = splits(t, sys.inv(t), profiles[i], profiles[j]);
        if (! useful)
            report.violations.push_back({"usefulness", "separation " + std::to_string(t) + " distinguishes no pair"});
    }

    check_maximal_elements(report, leq, tree, profiles);
    report.seconds = since(start);
    return report;
}

std::vector<Bits> brute_good_images(const CornerSystem & sys, const ProfileSet & profiles)
{
    const std::size_t n = profiles.size();
    std::set<Bits> images;
    for (SepId s : sys.elements()) {
        Bits image(n);
        for (std::size_t i = 0; i < n; ++i)
            if (profiles[i].contains(sys.inv(s)))
                image.set(i);
        images.insert(image);
    }

    auto subset = [&](const Bits & a, bool neg_a, const Bits & b, bool neg_b) {
        for (std::size_t i = 0; i < n; ++i)
            if ((a.test(i) != neg_a) && ! (b.test(i) != neg_b))
                return false;
        return true;
    };

    std::vector<Bits> good;
    for (const auto & a : images) {
        if (a.none() || a.count() == n)
            continue;
        bool ok = true;
        for (const auto & b : images)
            if (! (subset(a, false, b, false) || subset(a, false, b, true) || subset(a, true, b, false)
                        || subset(a, true, b, true))) {
                ok = false;
                break;
            }
        if (ok)
            good.push_back(a);
    }
    return good;
}

}
