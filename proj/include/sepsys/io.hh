#ifndef SEPSYS_IO_HH
#define SEPSYS_IO_HH

#include <sepsys/core.hh>
#include <sepsys/profiles.hh>

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sepsys::io {

// Size limits, overridable through SEPSYS_LIMITS, e.g.
// "graph_vertices=10,powerset_n=14,brute_pairs=20".
struct Limits
{
    int graph_vertices = 8;
    int powerset_n = 12;
    std::size_t brute_pairs = 24;
};

Limits parse_limits(const std::string & text, Limits base = {});
Limits limits_from_env();

enum class InstanceKind { graph, powerset, explicit_tables };

struct ExplicitTables
{
    std::vector<std::string> labels;
    std::vector<SepId> inv;
    std::vector<std::pair<SepId, SepId>> leq_pairs;
    // join[s][t]; nullopt where the corner map is undefined
    std::vector<std::vector<std::optional<SepId>>> join;
    std::optional<std::vector<int>> ord;
};

struct InstanceSpec
{
    InstanceKind kind = InstanceKind::graph;
    std::string name;

    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;

    int n = 0;

    ExplicitTables tables;
};

inline constexpr int format_version = 1;

InstanceSpec parse_instance(const nlohmann::json & j);
nlohmann::json to_json(const InstanceSpec & spec);
InstanceSpec load_instance(const std::string & path);

// Oriented bipartitions (A, B) of the vertex set with no edge between A∖B
// and B∖A; ids ascend by (order, A, B).
Universe build_graph_universe(const std::vector<std::string> & vertices,
        const std::vector<std::pair<int, int>> & edges, const Limits & limits = {});
Universe build_graph_universe(int vertex_count, const std::vector<std::pair<int, int>> & edges,
        const Limits & limits = {});

// Subsets of {1..n}; id = bitmask.
Universe build_powerset_universe(int n, const Limits & limits = {});

// A materialized instance. The universe lives on the heap so the corner
// system's back-pointer survives moves.
struct Instance
{
    std::string name;
    std::unique_ptr<Universe> universe;
    CornerSystem system;
    // for instances without a universe
    std::vector<std::string> labels;

    bool has_ordered_universe() const { return universe && universe->has_order(); }
    std::string label(SepId s) const;
};

Instance materialize(const InstanceSpec & spec, const Limits & limits = {});

// Explicit tables for a corner system, elements renumbered 0..n-1 in
// ascending id order. Labels come from the system's universe if it has one.
InstanceSpec explicit_spec(const CornerSystem & sys, const std::string & name);

// Named fixtures: INST-SET4, INST-2TRI, INST-K4PAIR.
InstanceSpec inst_set4();
InstanceSpec inst_2tri();
InstanceSpec inst_k4pair();

nlohmann::json profile_to_json(const Profile & p);

}

#endif
