#include <sepsys/cli.hh>
#include <sepsys/fuzz.hh>
#include <sepsys/io.hh>
#include <sepsys/oracle.hh>
#include <sepsys/quotient.hh>
#include <sepsys/regularization.hh>
#include <sepsys/tangletree.hh>

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <set>

namespace sepsys {

namespace
{
    using nlohmann::json;

    std::string join_ids(const std::vector<SepId> & xs)
    {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i)
            out += (i ? " " : "") + std::to_string(xs[i]);
        return out;
    }

    std::string show(const Bits & b)
    {
        std::string s;
        for (std::size_t i = 0; i < b.size(); ++i)
            s += b.test(i) ? '1' : '0';
        return s;
    }

    io::Instance load(const std::string & path, const io::Limits & limits)
    {
        return io::materialize(io::load_instance(path), limits);
    }

    // S_K of the universe (with the chosen corner strategy), or the explicit
    // system itself when there is no order function.
    CornerSystem level_system(const io::Instance & inst, std::optional<int> order, CornerStrategy strategy)
    {
        if (! inst.has_ordered_universe())
            return strategy == CornerStrategy::induced ? inst.system : with_corner_strategy(inst.system, strategy);
        if (! order)
            throw input_error("--order is required for instances with an order function");
        return make_corner_system(subsystem_k(*inst.universe, *order), strategy);
    }

    ProfileSet tot_profiles(const io::Instance & inst, int max_order)
    {
        if (inst.has_ordered_universe())
            return enumerate_universe_profiles(*inst.universe, max_order, {.regular_only = true, .robust_only = true});
        return enumerate_profiles(inst.system);
    }

    int cmd_profiles(const io::Instance & inst, std::optional<int> max_order, bool regular, bool robust,
            std::ostream & out)
    {
        out << "instance " << inst.name << '\n';
        if (! inst.has_ordered_universe()) {
            if (robust)
                throw input_error("--robust-only needs an order function");
            auto ps = enumerate_profiles(inst.system, {.regular_only = regular});
            out << "profiles " << ps.size() << '\n';
            for (std::size_t i = 0; i < ps.size(); ++i)
                out << "P" << i << " size " << ps[i].chosen.count() << ": " << join_ids(ps[i].ids()) << '\n';
            return 0;
        }
        const auto & u = *inst.universe;
        int k_max = max_order.value_or(u.max_order());
        auto levels = enumerate_profiles_by_order(u, k_max, {.regular_only = regular, .robust_only = robust});
        std::size_t index = 0;
        for (std::size_t k = 0; k < levels.size(); ++k) {
            out << "order " << k << ": " << levels[k].size() << " profiles\n";
            for (const auto & p : levels[k])
                out << "P" << index++ << " order " << k << " size " << p.chosen.count() << ": "
                    << join_ids(p.ids()) << '\n';
        }
        return 0;
    }

    json tree_json(const io::Instance & inst, const std::vector<SepId> & tree, const ProfileSet & profiles,
            const std::vector<Certificate> & certificates, std::optional<int> max_order, std::optional<std::uint64_t> seed)
    {
        json j;
        j["format"] = "sepsys-tree";
        j["version"] = io::format_version;
        j["instance"] = inst.name;
        if (max_order)
            j["max_order"] = *max_order;
        if (seed)
            j["seed"] = *seed;
        json ps = json::array();
        for (const auto & p : profiles)
            ps.push_back(io::profile_to_json(p));
        j["profiles"] = ps;
        json ts = json::array();
        for (SepId t : tree) {
            json e;
            e["id"] = t;
            e["label"] = inst.label(t);
            if (inst.has_ordered_universe())
                e["order"] = inst.universe->order(t);
            ts.push_back(e);
        }
        j["tree"] = ts;
        json cs = json::array();
        for (const auto & c : certificates)
            cs.push_back({{"sep", c.sep}, {"first", c.first}, {"second", c.second}});
        j["certificates"] = cs;
        return j;
    }

    // One node per {t, t*}; an edge for each covering pair x < y in the tree.
    void tree_dot(const io::Instance & inst, const std::vector<SepId> & tree, std::ostream & out)
    {
        const auto & sys = inst.system;
        std::set<SepId> all;
        for (SepId t : tree) {
            all.insert(t);
            all.insert(sys.inv(t));
        }
        auto cls = [&](SepId t) { return std::min(t, sys.inv(t)); };
        out << "graph tree {\n";
        for (SepId t : all)
            if (t == cls(t))
                out << "  n" << t << " [label=\"" << inst.label(t) << "\"];\n";
        std::set<std::pair<SepId, SepId>> edges;
        for (SepId x : all)
            for (SepId y : all) {
                if (! sys.less(x, y))
                    continue;
                bool covered = std::any_of(all.begin(), all.end(), [&](SepId z) {
                        return sys.less(x, z) && sys.less(z, y); });
                if (! covered && cls(x) != cls(y))
                    edges.insert({std::min(cls(x), cls(y)), std::max(cls(x), cls(y))});
            }
        for (auto [a, b] : edges)
            out << "  n" << a << " -- n" << b << ";\n";
        out << "}\n";
    }

    int cmd_tot(const io::Instance & inst, std::optional<int> max_order, const std::string & format,
            std::optional<std::uint64_t> seed, std::ostream & out)
    {
        std::vector<SepId> tree;
        std::vector<Certificate> certificates;
        ProfileSet profiles;
        std::optional<int> k_max;
        if (inst.has_ordered_universe()) {
            k_max = max_order.value_or(inst.universe->max_order());
            profiles = tot_profiles(inst, *k_max);
            auto result = tree_of_tangles(*inst.universe, profiles);
            tree = result.tree;
            certificates = result.certificates;
        } else {
            profiles = tot_profiles(inst, 0);
            tree = tree_set_nonregular(inst.system, profiles);
            for (SepId t : tree)
                for (std::size_t i = 0; i < profiles.size(); ++i)
                    for (std::size_t j = i + 1; j < profiles.size(); ++j)
                        if (distinguishes(t, inst.system.inv(t), profiles[i], profiles[j])) {
                            certificates.push_back({t, i, j});
                            i = j = profiles.size();
                        }
        }

        if (format == "dot") {
            tree_dot(inst, tree, out);
        } else if (format == "text") {
            out << "instance " << inst.name << '\n' << "profiles " << profiles.size() << '\n';
            for (const auto & c : certificates)
                out << c.sep << ' ' << inst.label(c.sep) << " distinguishes P" << c.first << " P" << c.second << '\n';
        } else {
            out << tree_json(inst, tree, profiles, certificates, k_max, seed).dump(2) << '\n';
        }
        return 0;
    }

    int cmd_verify(const io::Instance & inst, const std::string & tree_path, std::ostream & out)
    {
        std::ifstream in(tree_path);
        if (! in)
            throw input_error("cannot open tree file '" + tree_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception & e) {
            throw input_error("'" + tree_path + "': " + e.what());
        }
        if (! j.is_object() || ! j.contains("tree") || ! j["tree"].is_array())
            throw input_error("tree file needs a \"tree\" array");
        std::vector<SepId> tree;
        for (const auto & e : j["tree"]) {
            const json & id = e.is_object() ? e.value("id", json()) : e;
            if (! id.is_number_unsigned())
                throw input_error("tree entry without a separation id: " + e.dump());
            tree.push_back(id.get<SepId>());
        }

        oracle::VerificationReport report;
        if (inst.has_ordered_universe()) {
            int k_max = j.value("max_order", inst.universe->max_order());
            auto profiles = tot_profiles(inst, k_max);
            report = oracle::verify_tree(tree, profiles, *inst.universe, inst.name);
        } else {
            report = oracle::verify_abstract_tree(tree, tot_profiles(inst, 0), inst.system, inst.name);
        }
        out << "instance " << inst.name << '\n';
        for (const auto & c : report.checks) {
            auto failures = std::count_if(report.violations.begin(), report.violations.end(),
                    [&](const auto & v) { return v.check == c; });
            out << "check " << c << ": " << (failures ? "FAIL" : "ok") << '\n';
        }
        for (const auto & v : report.violations)
            out << "violation " << v.check << ": " << v.witness << '\n';
        return report.ok() ? 0 : 1;
    }

    int cmd_regularize(const io::Instance & inst, std::optional<int> order, CornerStrategy strategy, std::ostream & out)
    {
        auto sys = level_system(inst, order, strategy);
        auto profiles = enumerate_profiles(sys);
        auto r = regularize(sys, profiles);
        out << "instance " << inst.name << '\n';
        out << "elements " << sys.size() << '\n';
        out << "removed " << join_ids(r.removed) << '\n';
        out << "dropped";
        for (auto [s, t] : r.dropped_relations)
            out << ' ' << s << "<=" << t;
        out << '\n';
        out << "regularization " << r.regular.size() << " elements, regular "
            << (is_regular_system(r.regular) ? "yes" : "no") << '\n';
        out << "profiles " << profiles.size() << " projected " << r.projected_profiles.size() << '\n';
        bool orderly = is_orderly(sys, profiles);
        out << "orderly " << (orderly ? "yes" : "no") << " after "
            << (is_orderly(r.regular, r.projected_profiles) ? "yes" : "no") << '\n';
        if (orderly)
            out << "tree " << join_ids(tree_set_nonregular(sys, profiles)) << '\n';

        fuzz::CheckResult check{"regularization"};
        fuzz::Rng rng(0);
        fuzz::check_regularization(sys, profiles, rng, 0, inst.name, check);
        for (const auto & v : check.violations)
            out << "violation " << v.check << ": " << v.witness << '\n';
        return check.ok() ? 0 : 1;
    }

    int cmd_quotient(const io::Instance & inst, std::optional<int> order, CornerStrategy strategy, std::ostream & out)
    {
        auto sys = level_system(inst, order, strategy);
        auto profiles = enumerate_profiles(sys, {.regular_only = true});
        out << "instance " << inst.name << '\n';
        out << "elements " << sys.size() << " regular profiles " << profiles.size() << '\n';
        for (const auto & f : fibers(sys, profiles))
            out << "fiber " << show(f.image) << ": " << join_ids(f.members) << '\n';
        for (const auto & g : good_image_tree_set(sys, profiles))
            out << "good " << show(g) << '\n';
        out << "weakly-submodular " << (is_weakly_submodular(sys, profiles) ? "yes" : "no") << '\n';
        auto check = check_orderly(sys, profiles);
        out << "orderly " << (check.orderly ? "yes" : "no");
        if (check.witness)
            out << " witness " << check.witness->first << ' ' << check.witness->second;
        out << '\n';
        if (check.orderly) {
            auto tree = is_regular_system(sys) ? abstract_tree_set(sys, profiles) : tree_set_nonregular(sys, profiles);
            out << "tree " << join_ids(tree) << '\n';
        }
        return 0;
    }

    int cmd_fuzz(std::uint64_t seed, std::size_t count, std::ostream & out)
    {
        auto report = fuzz::run_fuzz(seed, count);
        for (const auto & c : report.checks)
            out << "check " << c.name << ": cases " << c.cases << " skipped " << c.skipped << " violations "
                << c.violations.size() << '\n';
        for (const auto & c : report.checks)
            for (const auto & v : c.violations)
                out << "violation " << v.check << ": " << v.witness << '\n';
        return report.ok() ? 0 : 1;
    }
}

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"separation systems, profiles and trees of tangles", "sepsys"};
    app.require_subcommand(1);

    std::string instance, tree_file, format = "json", strategy_name = "induced";
    std::optional<int> max_order, order;
    std::optional<std::uint64_t> seed;
    bool regular = false, robust = false, dot = false, json_out = false;
    std::uint64_t fuzz_seed = 0;
    std::size_t fuzz_count = 10;

    auto * profiles = app.add_subcommand("profiles", "list profiles of every order up to K");
    profiles->add_option("instance", instance)->required();
    profiles->add_option("--max-order", max_order);
    profiles->add_flag("--regular-only", regular);
    profiles->add_flag("--robust-only", robust);

    auto * tot = app.add_subcommand("tot", "tree of tangles with certificates");
    tot->add_option("instance", instance)->required();
    tot->add_option("--max-order", max_order);
    tot->add_option("--format", format)->check(CLI::IsMember({"json", "dot", "text"}));
    tot->add_flag("--json", json_out);
    tot->add_flag("--dot", dot);
    tot->add_option("--seed", seed);

    auto * verify = app.add_subcommand("verify", "check a tree file against the oracle");
    verify->add_option("instance", instance)->required();
    verify->add_option("tree-file", tree_file)->required();

    auto * regularize = app.add_subcommand("regularize", "essential core and regularization of S_K");
    regularize->add_option("instance", instance)->required();
    regularize->add_option("--order", order);
    regularize->add_option("--corners", strategy_name);

    auto * quotient = app.add_subcommand("quotient", "image system and good set of S_K");
    quotient->add_option("instance", instance)->required();
    quotient->add_option("--order", order);
    quotient->add_option("--corners", strategy_name);

    auto * fuzz = app.add_subcommand("fuzz", "random-instance lemma falsification");
    fuzz->add_option("--seed", fuzz_seed);
    fuzz->add_option("--count", fuzz_count);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        auto limits = io::limits_from_env();
        if (fuzz->parsed())
            return cmd_fuzz(fuzz_seed, fuzz_count, out);

        auto inst = load(instance, limits);
        auto strategy = parse_corner_strategy(strategy_name);
        if (profiles->parsed())
            return cmd_profiles(inst, max_order, regular, robust, out);
        if (tot->parsed())
            return cmd_tot(inst, max_order, dot ? "dot" : (json_out ? "json" : format), seed, out);
        if (verify->parsed())
            return cmd_verify(inst, tree_file, out);
        if (regularize->parsed())
            return cmd_regularize(inst, order, strategy, out);
        if (quotient->parsed())
            return cmd_quotient(inst, order, strategy, out);
    } catch (const input_error & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const precondition_error & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const hypothesis_violation & e) {
        err << "violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}
