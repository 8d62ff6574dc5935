#include <sepsys/fuzz.hh>
#include <sepsys/quotient.hh>
#include <sepsys/tangletree.hh>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace sepsys::fuzz {

void CheckResult::fail(const std::string & instance, const std::string & witness)
{
    violations.push_back({name, instance + ": " + witness});
}

bool FuzzReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto & c) { return c.ok(); });
}

namespace
{
    template <typename T>
    T uniform(Rng & rng, T lo, T hi)
    {
        return std::uniform_int_distribution<T>(lo, hi)(rng);
    }

    bool coin(Rng & rng, double p)
    {
        return std::bernoulli_distribution(p)(rng);
    }

    RandomSystem sample_family(Rng & rng, std::shared_ptr<const Universe> base, const std::vector<SepId> & reps,
            std::size_t max_pairs, const std::string & name)
    {
        auto pool = reps;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t take = uniform<std::size_t>(rng, 1, std::min(max_pairs, pool.size()));
        Bits members(base->size());
        for (std::size_t i = 0; i < take; ++i) {
            members.set(pool[i]);
            members.set(base->inv(pool[i]));
        }
        static constexpr CornerStrategy strategies[] = {
            CornerStrategy::induced, CornerStrategy::poset_sup, CornerStrategy::comparable};
        RandomSystem out;
        out.name = name;
        out.strategy = strategies[uniform<int>(rng, 0, 2)];
        out.system = make_corner_system(SubSystem{base.get(), members}, out.strategy);
        out.base = std::move(base);
        return out;
    }

    std::string ids(const std::vector<SepId> & xs)
    {
        std::ostringstream out;
        out << '[';
        for (std::size_t i = 0; i < xs.size(); ++i)
            out << (i ? "," : "") << xs[i];
        out << ']';
        return out.str();
    }

    // f(s) computed straight from membership.
    Bits image_of(const CornerSystem & sys, SepId s, const ProfileSet & profiles)
    {
        Bits image(profiles.size());
        for (std::size_t i = 0; i < profiles.size(); ++i)
            if (profiles[i].contains(sys.inv(s)))
                image.set(i);
        return image;
    }

    std::string show(const Bits & b)
    {
        std::string s;
        boost::to_string(b, s);
        std::reverse(s.begin(), s.end());
        return s;
    }

    ProfileSet regular_only(const CornerSystem & sys, const ProfileSet & profiles)
    {
        ProfileSet out;
        for (const auto & p : profiles)
            if (is_regular_profile(sys, p))
                out.insert(p);
        return out;
    }

    // Random tree set of sys: shuffled elements, kept when nested with
    // everything kept so far and neither degenerate nor (co-)trivial. The
    // first pass only takes elements separating a pair not yet separated,
    // the second adds a random number of further elements.
    std::vector<SepId> greedy_tree_set(const CornerSystem & sys, const ProfileSet & profiles, Rng & rng,
            std::vector<SepId> tree)
    {
        auto pool = sys.elements();
        std::shuffle(pool.begin(), pool.end(), rng);
        auto admissible = [&](SepId x) {
            return std::find(tree.begin(), tree.end(), x) == tree.end() && x != sys.inv(x)
                && ! is_trivial_in(sys, x) && ! is_trivial_in(sys, sys.inv(x))
                && std::all_of(tree.begin(), tree.end(), [&](SepId t) { return nested(sys, x, t); });
        };
        auto separated = [&](std::size_t i, std::size_t j) {
            return std::any_of(tree.begin(), tree.end(), [&](SepId t) {
                    return distinguishes(t, sys.inv(t), profiles[i], profiles[j]); });
        };
        auto add = [&](SepId x) {
            tree.push_back(x);
            tree.push_back(sys.inv(x));
        };

        for (SepId x : pool) {
            bool useful = false;
            for (std::size_t i = 0; i < profiles.size() && ! useful; ++i)
                for (std::size_t j = i + 1; j < profiles.size() && ! useful; ++j)
                    useful = distinguishes(x, sys.inv(x), profiles[i], profiles[j]) && ! separated(i, j);
            if (useful && admissible(x))
                add(x);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        for (SepId x : pool) {
            if (coin(rng, 0.3))
                break;
            if (admissible(x))
                add(x);
        }
        std::sort(tree.begin(), tree.end());
        tree.erase(std::unique(tree.begin(), tree.end()), tree.end());
        return tree;
    }

    bool distinguishes_all(const std::vector<SepId> & tree, const CornerSystem & sys, const ProfileSet & profiles)
    {
        for (std::size_t i = 0; i < profiles.size(); ++i)
            for (std::size_t j = i + 1; j < profiles.size(); ++j)
                if (std::none_of(tree.begin(), tree.end(), [&](SepId t) {
                            return distinguishes(t, sys.inv(t), profiles[i], profiles[j]); }))
                    return false;
        return true;
    }

    void transfer(const std::vector<SepId> & tree, const CornerSystem & sys, const ProfileSet & profiles,
            const std::string & what, const std::string & instance, CheckResult & out)
    {
        auto report = oracle::verify_abstract_tree(tree, profiles, sys, instance);
        for (const auto & v : report.violations)
            if (v.check == "tree-set" || v.check == "distinguishes-all" || v.check == "input")
                out.fail(instance, what + " " + ids(tree) + ": " + v.witness);
    }
}

io::InstanceSpec random_connected_graph(Rng & rng, int min_vertices, int max_vertices, const std::string & name)
{
    io::InstanceSpec spec;
    spec.kind = io::InstanceKind::graph;
    spec.name = name;
    const int n = uniform(rng, min_vertices, max_vertices);
    for (int i = 0; i < n; ++i)
        spec.vertices.push_back(std::string(1, char('a' + i)));

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::set<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
        int a = perm[i], b = perm[uniform(rng, 0, i - 1)];
        edges.insert({std::min(a, b), std::max(a, b)});
    }
    const double density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng, density))
                edges.insert({a, b});
    spec.edges.assign(edges.begin(), edges.end());
    return spec;
}

RandomSystem random_regular_system(Rng & rng, int ground, std::size_t max_pairs, const std::string & name)
{
    auto base = std::make_shared<const Universe>(io::build_powerset_universe(ground));
    std::vector<SepId> reps;
    for (SepId x = 1; x + 1 < base->size(); ++x)
        if (x < base->inv(x))
            reps.push_back(x);
    return sample_family(rng, std::move(base), reps, max_pairs, name);
}

RandomSystem random_bipartition_system(Rng & rng, int ground, std::size_t max_pairs, const std::string & name)
{
    auto base = std::make_shared<const Universe>(io::build_graph_universe(ground, {}));
    std::vector<SepId> reps;
    for (SepId x = 0; x < base->size(); ++x)
        if (x < base->inv(x))
            reps.push_back(x);
    return sample_family(rng, std::move(base), reps, max_pairs, name);
}

void check_maphom(const CornerSystem & sys, const ProfileSet & profiles, Rng & rng, std::size_t samples,
        const std::string & instance, CheckResult & out)
{
    const auto & elements = sys.elements();
    if (elements.empty() || profiles.empty()) {
        ++out.skipped;
        return;
    }
    for (std::size_t n = 0; n < samples; ++n) {
        SepId s = elements[uniform<std::size_t>(rng, 0, elements.size() - 1)];
        SepId t = elements[uniform<std::size_t>(rng, 0, elements.size() - 1)];
        ++out.cases;
        Bits fs = image_of(sys, s, profiles), ft = image_of(sys, t, profiles);
        auto pair = "(" + std::to_string(s) + "," + std::to_string(t) + ")";

        if (image_of(sys, sys.inv(s), profiles) != ~fs)
            out.fail(instance, pair + ": f(s*) is not the complement of f(s)");
        if (sys.leq(s, t) && ! fs.is_subset_of(ft))
            out.fail(instance, pair + ": s <= t but f(s)=" + show(fs) + " not in f(t)=" + show(ft));
        if (auto j = sys.corner(s, t); j && image_of(sys, *j, profiles) != (fs | ft))
            out.fail(instance, pair + ": f(s v t)=" + show(image_of(sys, *j, profiles)) + " but f(s)|f(t)="
                    + show(fs | ft));
        if (auto m = sys.corner_meet(s, t); m && image_of(sys, *m, profiles) != (fs & ft))
            out.fail(instance, pair + ": f(s ^ t)=" + show(image_of(sys, *m, profiles)) + " but f(s)&f(t)="
                    + show(fs & ft));
    }
}

void check_leqequiv(const CornerSystem & sys, const ProfileSet & profiles, const std::string & instance,
        CheckResult & out)
{
    if (profiles.empty() || ! is_weakly_submodular(sys, profiles)) {
        ++out.skipped;
        return;
    }
    std::map<Bits, std::vector<SepId>> fibers;
    for (SepId s : sys.elements())
        fibers[image_of(sys, s, profiles)].push_back(s);

    for (const auto & [a, xs] : fibers)
        for (const auto & [b, ys] : fibers) {
            ++out.cases;
            bool witnessed = false;
            for (SepId x : xs) {
                for (SepId y : ys)
                    if (sys.leq(x, y)) {
                        witnessed = true;
                        break;
                    }
                if (witnessed)
                    break;
            }
            if (a.is_subset_of(b) != witnessed)
                out.fail(instance, "fibers " + show(a) + " and " + show(b) + ": inclusion "
                        + (a.is_subset_of(b) ? "holds" : "fails") + " but element comparison "
                        + (witnessed ? "holds" : "fails"));
        }
}

void check_abstract(const CornerSystem & sys, const ProfileSet & profiles, const std::string & instance,
        CheckResult & out)
{
    if (! is_regular_system(sys) || ! is_orderly(sys, profiles)) {
        ++out.skipped;
        return;
    }
    ++out.cases;
    try {
        auto tree = abstract_tree_set(sys, profiles);
        auto report = oracle::verify_abstract_tree(tree, profiles, sys, instance);
        for (const auto & v : report.violations)
            out.fail(instance, v.check + ": " + v.witness);
    } catch (const std::exception & e) {
        out.fail(instance, e.what());
    }
}

void check_regularization(const CornerSystem & sys, const ProfileSet & profiles, Rng & rng,
        std::size_t random_trees, const std::string & instance, CheckResult & out)
{
    ++out.cases;
    RegularizationResult r;
    try {
        r = regularize(sys, profiles);
    } catch (const std::exception & e) {
        out.fail(instance, std::string("regularize threw: ") + e.what());
        return;
    }
    const auto & reg = r.regular;

    if (! is_regular_system(reg))
        out.fail(instance, "regularization is not regular");
    for (const auto & v : validate_corner_system(reg).violations)
        out.fail(instance, "regularization is not a corner system: " + v);
    for (std::size_t i = 0; i < r.projected_profiles.size(); ++i)
        if (! is_profile(reg, r.projected_profiles[i].chosen))
            out.fail(instance, "projected profile " + std::to_string(i) + " is not a profile of S'");

    const bool orderly = is_orderly(sys, profiles);
    if (orderly) {
        auto check = check_orderly(reg, r.projected_profiles);
        if (! check.orderly)
            out.fail(instance, "orderliness lost, witness (" + std::to_string(check.witness->first) + ","
                    + std::to_string(check.witness->second) + ")");
    }
    bool closed = std::all_of(profiles.begin(), profiles.end(), [&](const auto & p) { return is_closed(sys, p); });
    if (closed)
        for (const auto & p : r.projected_profiles)
            if (! is_closed(reg, p))
                out.fail(instance, "closedness lost");

    std::vector<SepId> pipeline;
    if (orderly && profiles.size() == r.projected_profiles.size()) {
        try {
            pipeline = abstract_tree_set(reg, r.projected_profiles);
            transfer(pipeline, sys, profiles, "pipeline tree", instance, out);
        } catch (const std::exception & e) {
            out.fail(instance, std::string("pipeline threw: ") + e.what());
        }
    }

    std::size_t tested = 0;
    for (std::size_t attempt = 0; attempt < 20 * random_trees && tested < random_trees; ++attempt) {
        auto tree = greedy_tree_set(reg, r.projected_profiles, rng, attempt % 2 ? pipeline : std::vector<SepId>{});
        if (! is_tree_set(tree, reg) || ! distinguishes_all(tree, reg, r.projected_profiles))
            continue;
        ++tested;
        ++out.trees;
        transfer(tree, sys, profiles, "random tree", instance, out);
    }
}

void check_main(const Universe & u, int max_order, const std::string & instance, CheckResult & out, double * seconds)
{
    auto start = std::chrono::steady_clock::now();
    ++out.cases;
    try {
        auto profiles = enumerate_universe_profiles(u, max_order, {.regular_only = true, .robust_only = true});
        auto tot = tree_of_tangles(u, profiles);
        auto report = oracle::verify_tree(tot.tree, profiles, u, instance);
        for (const auto & v : report.violations)
            out.fail(instance, v.check + ": " + v.witness);
        for (const auto & c : tot.certificates) {
            auto best = oracle::brute_min_order(u, profiles[c.first], profiles[c.second]);
            const auto & p = profiles[c.first];
            const auto & q = profiles[c.second];
            bool splits = (p.contains(c.sep) && q.contains(u.inv(c.sep)))
                || (p.contains(u.inv(c.sep)) && q.contains(c.sep));
            if (! splits || best != u.order(c.sep))
                out.fail(instance, "certificate for " + std::to_string(c.sep) + " is wrong");
        }
    } catch (const std::exception & e) {
        out.fail(instance, e.what());
    }
    if (seconds)
        *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_oracle_equality(const CornerSystem & sys, const oracle::Limits & limits, const std::string & instance,
        CheckResult & out)
{
    ProfileSet brute;
    try {
        brute = oracle::brute_profiles(sys, limits);
    } catch (const limit_exceeded &) {
        ++out.skipped;
        return;
    }
    ++out.cases;
    auto fast = enumerate_profiles(sys);
    if (! brute.same_sets(fast))
        out.fail(instance, "brute force finds " + std::to_string(brute.size()) + " profiles, enumeration "
                + std::to_string(fast.size()));
}

FuzzReport run_fuzz(std::uint64_t seed, std::size_t count)
{
    CheckResult main{"main-theorem"}, maphom{"maphom"}, leqequiv{"leqequiv"}, abstract{"abstract-tree-set"},
        regularization{"regularization"}, equality{"oracle-equality"};

    for (std::size_t round = 0; round < count; ++round) {
        std::seed_seq seq{seed, std::uint64_t(round)};
        Rng rng(seq);
        auto tag = [&](const char * kind) { return std::string(kind) + "-" + std::to_string(seed) + "-"
            + std::to_string(round); };

        auto spec = random_connected_graph(rng, 2, 5, tag("graph"));
        auto u = io::build_graph_universe(spec.vertices, spec.edges);
        check_main(u, int(spec.vertices.size()), spec.name, main);
        for (int k = 1; k <= 3; ++k) {
            auto sys = induced_corner_system(u, subsystem_k(u, k).members);
            auto name = spec.name + "/S" + std::to_string(k);
            auto profiles = enumerate_profiles(sys, {.regular_only = true});
            check_maphom(sys, profiles, rng, 10, name, maphom);
            check_leqequiv(sys, profiles, name, leqequiv);
            check_oracle_equality(sys, {}, name, equality);
        }

        auto reg = random_regular_system(rng, uniform(rng, 3, 5), 12, tag("regular"));
        auto reg_profiles = oracle::brute_profiles(reg.system);
        check_maphom(reg.system, reg_profiles, rng, 10, reg.name, maphom);
        check_leqequiv(reg.system, reg_profiles, reg.name, leqequiv);
        check_abstract(reg.system, reg_profiles, reg.name, abstract);
        check_oracle_equality(reg.system, {}, reg.name, equality);

        auto bip = random_bipartition_system(rng, uniform(rng, 2, 3), 12, tag("bipartition"));
        auto bip_profiles = enumerate_profiles(bip.system);
        check_regularization(bip.system, bip_profiles, rng, 5, bip.name, regularization);
        check_maphom(bip.system, regular_only(bip.system, bip_profiles), rng, 10, bip.name, maphom);
        check_oracle_equality(bip.system, {}, bip.name, equality);
    }
    return FuzzReport{{main, maphom, leqequiv, abstract, regularization, equality}};
}

}
