#include <sepsys/io.hh>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sepsys::io {

using nlohmann::json;

Limits parse_limits(const std::string & text, Limits base)
{
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw input_error("SEPSYS_LIMITS: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        long value = 0;
        try {
            std::size_t used = 0;
            value = std::stol(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception &) {
            throw input_error("SEPSYS_LIMITS: bad value in '" + item + "'");
        }
        if (value < 0)
            throw input_error("SEPSYS_LIMITS: negative value in '" + item + "'");
        if (key == "graph_vertices")
            base.graph_vertices = int(value);
        else if (key == "powerset_n")
            base.powerset_n = int(value);
        else if (key == "brute_pairs")
            base.brute_pairs = std::size_t(value);
        else
            throw input_error("SEPSYS_LIMITS: unknown key '" + key + "'");
    }
    return base;
}

Limits limits_from_env()
{
    const char * env = std::getenv("SEPSYS_LIMITS");
    return env ? parse_limits(env) : Limits{};
}

namespace
{
    std::string side_label(std::uint32_t mask, const std::vector<std::string> & names)
    {
        if (mask == 0)
            return "∅";
        bool short_names = std::all_of(names.begin(), names.end(), [](const auto & s) { return s.size() == 1; });
        std::string out;
        for (std::size_t v = 0; v < names.size(); ++v)
            if (mask >> v & 1) {
                if (! short_names && ! out.empty())
                    out += ',';
                out += names[v];
            }
        return out;
    }

    std::vector<std::string> default_names(int n)
    {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i)
            names.push_back(n <= 26 ? std::string(1, char('a' + i)) : std::to_string(i));
        return names;
    }

    [[noreturn]] void bad(const std::string & msg)
    {
        throw input_error("instance: " + msg);
    }

    template <typename T>
    T get(const json & j, const char * key)
    {
        if (! j.contains(key))
            bad(std::string("missing field '") + key + "'");
        try {
            return j.at(key).get<T>();
        } catch (const json::exception & e) {
            bad(std::string("field '") + key + "': " + e.what());
        }
    }
}

Universe build_graph_universe(const std::vector<std::string> & vertices,
        const std::vector<std::pair<int, int>> & edges, const Limits & limits)
{
    const int n = int(vertices.size());
    if (n > limits.graph_vertices)
        throw limit_exceeded("graph has " + std::to_string(n) + " vertices, limit is "
                + std::to_string(limits.graph_vertices));

    std::set<std::pair<int, int>> seen;
    std::vector<std::uint32_t> adjacent(n, 0);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw input_error("graph: edge endpoint out of range");
        if (a == b)
            throw input_error("graph: self-loop at " + vertices[a] + " (multigraph input)");
        if (! seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw input_error("graph: repeated edge " + vertices[a] + vertices[b] + " (multigraph input)");
        adjacent[a] |= 1u << b;
        adjacent[b] |= 1u << a;
    }

    struct Sep
    {
        int order;
        std::uint32_t a, b;
        auto operator<=> (const Sep &) const = default;
    };
    std::vector<Sep> seps;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint32_t a = 0, b = 0;
        std::uint64_t c = code;
        for (int v = 0; v < n; ++v, c /= 3) {
            if (c % 3 != 1)
                a |= 1u << v;
            if (c % 3 != 0)
                b |= 1u << v;
        }
        std::uint32_t only_a = a & ~b, only_b = b & ~a;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if ((only_a >> v & 1) && (adjacent[v] & only_b))
                ok = false;
        if (ok)
            seps.push_back({std::popcount(a & b), a, b});
    }
    std::sort(seps.begin(), seps.end());

    std::map<std::pair<std::uint32_t, std::uint32_t>, SepId> index;
    for (std::size_t i = 0; i < seps.size(); ++i)
        index[{seps[i].a, seps[i].b}] = SepId(i);
    auto id = [&](std::uint32_t a, std::uint32_t b) { return index.at({a, b}); };

    std::vector<int> ord;
    std::vector<std::string> labels;
    for (const auto & s : seps) {
        ord.push_back(s.order);
        labels.push_back(side_label(s.a, vertices) + "|" + side_label(s.b, vertices));
    }

    return Universe::build(seps.size(),
            [&](SepId s) { return id(seps[s].b, seps[s].a); },
            [&](SepId s, SepId t) {
                return (seps[s].a & ~seps[t].a) == 0 && (seps[t].b & ~seps[s].b) == 0;
            },
            [&](SepId s, SepId t) { return id(seps[s].a | seps[t].a, seps[s].b & seps[t].b); },
            [&](SepId s, SepId t) { return id(seps[s].a & seps[t].a, seps[s].b | seps[t].b); },
            ord, labels);
}

Universe build_graph_universe(int vertex_count, const std::vector<std::pair<int, int>> & edges, const Limits & limits)
{
    if (vertex_count < 0)
        throw input_error("graph: negative vertex count");
    if (vertex_count > limits.graph_vertices)
        throw limit_exceeded("graph has " + std::to_string(vertex_count) + " vertices, limit is "
                + std::to_string(limits.graph_vertices));
    return build_graph_universe(default_names(vertex_count), edges, limits);
}

Universe build_powerset_universe(int n, const Limits & limits)
{
    if (n < 0)
        throw input_error("powerset: negative ground-set size");
    if (n > limits.powerset_n || n > 20)
        throw limit_exceeded("powerset of size " + std::to_string(n) + " exceeds the limit of "
                + std::to_string(limits.powerset_n));
    const SepId size = SepId(1) << n;
    const SepId full = size - 1;
    std::vector<int> ord(size);
    std::vector<std::string> labels(size);
    for (SepId x = 0; x < size; ++x) {
        int c = std::popcount(x);
        ord[x] = std::min(c, n - c);
        std::string l = "{";
        for (int i = 0; i < n; ++i)
            if (x >> i & 1) {
                if (l.size() > 1)
                    l += ',';
                l += std::to_string(i + 1);
            }
        labels[x] = l + "}";
    }
    return Universe::build(size,
            [=](SepId x) { return full & ~x; },
            [](SepId x, SepId y) { return (x & ~y) == 0; },
            [](SepId x, SepId y) { return x | y; },
            [](SepId x, SepId y) { return x & y; },
            ord, labels);
}

InstanceSpec parse_instance(const json & j)
{
    if (! j.is_object())
        bad("top level must be an object");
    if (j.contains("format") && j.at("format") != "sepsys-instance")
        bad("unknown format");
    if (j.contains("version") && j.at("version") != format_version)
        bad("unsupported version " + j.at("version").dump());

    InstanceSpec spec;
    spec.name = j.value("name", std::string());
    auto kind = get<std::string>(j, "kind");

    if (kind == "graph") {
        spec.kind = InstanceKind::graph;
        auto raw_edges = get<json>(j, "edges");
        if (! raw_edges.is_array())
            bad("edges must be an array");
        if (j.contains("vertices")) {
            auto vs = get<json>(j, "vertices");
            if (vs.is_number_integer()) {
                spec.vertices = default_names(vs.get<int>());
            } else {
                spec.vertices = get<std::vector<std::string>>(j, "vertices");
            }
        } else {
            std::set<std::string> names;
            for (const auto & e : raw_edges)
                if (e.is_array())
                    for (const auto & v : e)
                        names.insert(v.is_string() ? v.get<std::string>() : v.dump());
            spec.vertices.assign(names.begin(), names.end());
        }
        std::map<std::string, int> pos;
        for (std::size_t i = 0; i < spec.vertices.size(); ++i)
            if (! pos.emplace(spec.vertices[i], int(i)).second)
                bad("duplicate vertex '" + spec.vertices[i] + "'");
        auto resolve = [&](const json & v) {
            if (v.is_number_integer()) {
                int i = v.get<int>();
                if (i < 0 || i >= int(spec.vertices.size()))
                    bad("vertex index out of range: " + v.dump());
                return i;
            }
            if (! v.is_string())
                bad("vertex must be a name or an index");
            auto it = pos.find(v.get<std::string>());
            if (it == pos.end())
                bad("unknown vertex '" + v.get<std::string>() + "'");
            return it->second;
        };
        for (const auto & e : raw_edges) {
            if (! e.is_array() || e.size() != 2)
                bad("each edge must be a pair");
            int a = resolve(e[0]), b = resolve(e[1]);
            spec.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(spec.edges.begin(), spec.edges.end());
    } else if (kind == "powerset") {
        spec.kind = InstanceKind::powerset;
        spec.n = get<int>(j, "n");
    } else if (kind == "explicit") {
        spec.kind = InstanceKind::explicit_tables;
        auto & t = spec.tables;
        auto elements = get<json>(j, "elements");
        if (elements.is_number_integer()) {
            for (int i = 0; i < elements.get<int>(); ++i)
                t.labels.push_back(std::to_string(i));
        } else {
            t.labels = get<std::vector<std::string>>(j, "elements");
        }
        const std::size_t n = t.labels.size();
        t.inv = get<std::vector<SepId>>(j, "inv");
        if (t.inv.size() != n)
            bad("inv has " + std::to_string(t.inv.size()) + " entries, expected " + std::to_string(n));
        for (SepId s : t.inv)
            if (s >= n)
                bad("inv entry out of range");
        for (const auto & p : get<std::vector<std::vector<SepId>>>(j, "leq_pairs")) {
            if (p.size() != 2 || p[0] >= n || p[1] >= n)
                bad("leq_pairs entries must be in-range pairs");
            t.leq_pairs.emplace_back(p[0], p[1]);
        }
        std::sort(t.leq_pairs.begin(), t.leq_pairs.end());
        t.leq_pairs.erase(std::unique(t.leq_pairs.begin(), t.leq_pairs.end()), t.leq_pairs.end());
        auto join = get<json>(j, "join");
        if (! join.is_array() || join.size() != n)
            bad("join must be an n×n matrix");
        for (const auto & row : join) {
            if (! row.is_array() || row.size() != n)
                bad("join must be an n×n matrix");
            std::vector<std::optional<SepId>> r;
            for (const auto & v : row) {
                if (v.is_null()) {
                    r.push_back(std::nullopt);
                } else {
                    if (! v.is_number_unsigned() || v.get<SepId>() >= n)
                        bad("join entry out of range: " + v.dump());
                    r.push_back(v.get<SepId>());
                }
            }
            t.join.push_back(std::move(r));
        }
        if (j.contains("ord") && ! j.at("ord").is_null()) {
            t.ord = get<std::vector<int>>(j, "ord");
            if (t.ord->size() != n)
                bad("ord has the wrong length");
        }
    } else {
        bad("unknown kind '" + kind + "'");
    }
    return spec;
}

json to_json(const InstanceSpec & spec)
{
    json j;
    j["format"] = "sepsys-instance";
    j["version"] = format_version;
    j["name"] = spec.name;
    switch (spec.kind) {
        case InstanceKind::graph: {
            j["kind"] = "graph";
            j["vertices"] = spec.vertices;
            json edges = json::array();
            auto sorted = spec.edges;
            for (auto & [a, b] : sorted)
                if (a > b)
                    std::swap(a, b);
            std::sort(sorted.begin(), sorted.end());
            for (auto [a, b] : sorted)
                edges.push_back({spec.vertices.at(a), spec.vertices.at(b)});
            j["edges"] = edges;
            break;
        }
        case InstanceKind::powerset:
            j["kind"] = "powerset";
            j["n"] = spec.n;
            break;
        case InstanceKind::explicit_tables: {
            const auto & t = spec.tables;
            j["kind"] = "explicit";
            j["elements"] = t.labels;
            j["inv"] = t.inv;
            json leq = json::array();
            auto pairs = t.leq_pairs;
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            for (auto [a, b] : pairs)
                leq.push_back({a, b});
            j["leq_pairs"] = leq;
            json join = json::array();
            for (const auto & row : t.join) {
                json r = json::array();
                for (const auto & v : row)
                    r.push_back(v ? json(*v) : json(nullptr));
                join.push_back(r);
            }
            j["join"] = join;
            if (t.ord)
                j["ord"] = *t.ord;
            break;
        }
    }
    return j;
}

InstanceSpec load_instance(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw input_error("cannot open instance file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception & e) {
        throw input_error("'" + path + "': " + e.what());
    }
    return parse_instance(j);
}

std::string Instance::label(SepId s) const
{
    if (universe)
        return universe->label(s);
    if (s < labels.size())
        return labels[s];
    return std::to_string(s);
}

namespace
{
    // Reflexive-transitive closure of the given pairs, as up-sets.
    std::vector<Bits> closure(std::size_t n, const std::vector<std::pair<SepId, SepId>> & pairs)
    {
        std::vector<Bits> up(n, Bits(n));
        for (std::size_t i = 0; i < n; ++i)
            up[i].set(i);
        for (auto [a, b] : pairs)
            up[a].set(b);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (up[i].test(k))
                    up[i] |= up[k];
        return up;
    }

    Instance materialize_explicit(const InstanceSpec & spec)
    {
        const auto & t = spec.tables;
        const std::size_t n = t.labels.size();
        auto up = closure(n, t.leq_pairs);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (up[i].test(j) && up[j].test(i))
                    throw input_error("instance: leq_pairs contain a cycle through " + t.labels[i] + " and "
                            + t.labels[j]);

        auto leq = [&](SepId a, SepId b) { return up[a].test(b); };
        auto inv = [&](SepId a) { return t.inv[a]; };

        bool total = std::all_of(t.join.begin(), t.join.end(), [](const auto & row) {
                return std::all_of(row.begin(), row.end(), [](const auto & v) { return v.has_value(); });
                });

        Instance inst;
        inst.name = spec.name;
        if (total) {
            auto join = [&](SepId a, SepId b) { return *t.join[a][b]; };
            auto meet = [&](SepId a, SepId b) { return t.inv[*t.join[t.inv[a]][t.inv[b]]]; };
            inst.universe = std::make_unique<Universe>(Universe::build(n, inv, leq, join, meet, t.ord, t.labels));
            auto report = validate_universe(*inst.universe);
            if (! report.ok())
                throw input_error("instance '" + spec.name + "': tables are not a universe: "
                        + report.violations.front());
            inst.system = as_corner_system(*inst.universe);
            return inst;
        }

        inst.labels = t.labels;
        std::vector<SepId> elements(n);
        for (std::size_t i = 0; i < n; ++i)
            elements[i] = SepId(i);
        inst.system = CornerSystem::build(n, elements, inv, leq,
                [&](SepId a, SepId b) { return t.join[a][b]; });
        auto report = validate_corner_system(inst.system);
        if (! report.ok())
            throw input_error("instance '" + spec.name + "': tables are not a corner system: "
                    + report.violations.front());
        return inst;
    }
}

Instance materialize(const InstanceSpec & spec, const Limits & limits)
{
    if (spec.kind == InstanceKind::explicit_tables)
        return materialize_explicit(spec);

    Instance inst;
    inst.name = spec.name;
    if (spec.kind == InstanceKind::graph)
        inst.universe = std::make_unique<Universe>(build_graph_universe(spec.vertices, spec.edges, limits));
    else
        inst.universe = std::make_unique<Universe>(build_powerset_universe(spec.n, limits));
    inst.system = as_corner_system(*inst.universe);
    return inst;
}

InstanceSpec explicit_spec(const CornerSystem & sys, const std::string & name)
{
    InstanceSpec spec;
    spec.kind = InstanceKind::explicit_tables;
    spec.name = name;
    auto & t = spec.tables;
    const auto & elements = sys.elements();
    std::map<SepId, SepId> local;
    for (std::size_t i = 0; i < elements.size(); ++i)
        local[elements[i]] = SepId(i);
    const Universe * u = sys.universe();
    bool ordered = u && u->has_order();
    if (ordered)
        t.ord.emplace();
    for (SepId s : elements) {
        t.labels.push_back(u ? u->label(s) : std::to_string(s));
        t.inv.push_back(local.at(sys.inv(s)));
        if (ordered)
            t.ord->push_back(u->order(s));
        std::vector<std::optional<SepId>> row;
        for (SepId x : elements) {
            if (sys.less(s, x))
                t.leq_pairs.emplace_back(local.at(s), local.at(x));
            auto c = sys.corner(s, x);
            row.push_back(c ? std::optional<SepId>(local.at(*c)) : std::nullopt);
        }
        t.join.push_back(std::move(row));
    }
    return spec;
}

InstanceSpec inst_set4()
{
    InstanceSpec s;
    s.kind = InstanceKind::powerset;
    s.name = "INST-SET4";
    s.n = 4;
    return s;
}

InstanceSpec inst_2tri()
{
    InstanceSpec s;
    s.kind = InstanceKind::graph;
    s.name = "INST-2TRI";
    s.vertices = {"a", "b", "c", "d", "e", "f"};
    s.edges = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
    return s;
}

InstanceSpec inst_k4pair()
{
    InstanceSpec s;
    s.kind = InstanceKind::graph;
    s.name = "INST-K4PAIR";
    s.vertices = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (int side : {0, 4})
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                s.edges.emplace_back(side + i, side + j);
    s.edges.emplace_back(3, 4);
    std::sort(s.edges.begin(), s.edges.end());
    return s;
}

json profile_to_json(const Profile & p)
{
    json j;
    j["ids"] = p.ids();
    if (p.order)
        j["order"] = *p.order;
    return j;
}

}
