#ifndef SEPSYS_FUZZ_HH
#define SEPSYS_FUZZ_HH

#include <sepsys/core.hh>
#include <sepsys/io.hh>
#include <sepsys/oracle.hh>
#include <sepsys/profiles.hh>
#include <sepsys/regularization.hh>

#include <memory>
#include <random>
#include <string>
#include <vector>

// Random instances and the executable forms of the lemmas, shared by the
// `fuzz` subcommand and the acceptance suite.
namespace sepsys::fuzz {

using Rng = std::mt19937_64;

// Connected simple graph: random spanning tree plus random extra edges.
io::InstanceSpec random_connected_graph(Rng & rng, int min_vertices, int max_vertices, const std::string & name);

struct RandomSystem
{
    std::string name;
    std::shared_ptr<const Universe> base;
    CornerSystem system;
    CornerStrategy strategy = CornerStrategy::induced;
};

// Complement-closed family of nonempty proper subsets of {1..ground}; always
// regular.
RandomSystem random_regular_system(Rng & rng, int ground, std::size_t max_pairs, const std::string & name);

// Inv-closed family of bipartitions of an edgeless ground set; small,
// trivial and co-trivial elements are common, the degenerate one is left out.
RandomSystem random_bipartition_system(Rng & rng, int ground, std::size_t max_pairs, const std::string & name);

struct CheckResult
{
    explicit CheckResult(std::string check) : name(std::move(check)) {}

    std::string name;
    std::size_t cases = 0;
    std::size_t skipped = 0;
    // random tree sets pushed through the transfer check (regularization only)
    std::size_t trees = 0;
    std::vector<oracle::Violation> violations;

    bool ok() const { return violations.empty(); }
    void fail(const std::string & instance, const std::string & witness);
};

// f(s*) = f(s)ᶜ, s ≤ t ⇒ f(s) ⊆ f(t), f(s∨t) = f(s) ∪ f(t), f(s∧t) = f(s) ∩ f(t)
// on `samples` random pairs. One case per pair.
void check_maphom(const CornerSystem & sys, const ProfileSet & profiles, Rng & rng, std::size_t samples,
        const std::string & instance, CheckResult & out);

// For weakly submodular (S, 𝒫): A ⊆ B iff some a ∈ f⁻¹(A), b ∈ f⁻¹(B) have
// a ≤ b, over all fiber pairs. Non-weakly-submodular inputs are skipped.
void check_leqequiv(const CornerSystem & sys, const ProfileSet & profiles, const std::string & instance,
        CheckResult & out);

// abstract_tree_set on an orderly regular system, checked by the oracle.
void check_abstract(const CornerSystem & sys, const ProfileSet & profiles, const std::string & instance,
        CheckResult & out);

// Regularity of S', profiles of S' from 𝒫, orderliness and closedness
// preservation, and the tree-set transfer on the pipeline output plus
// `random_trees` greedy tree sets of S' distinguishing 𝒫'.
void check_regularization(const CornerSystem & sys, const ProfileSet & profiles, Rng & rng,
        std::size_t random_trees, const std::string & instance, CheckResult & out);

// Full tree-of-tangles run on all regular robust profiles of order ≤ max_order.
void check_main(const Universe & u, int max_order, const std::string & instance, CheckResult & out,
        double * seconds = nullptr);

// brute_profiles = enumerate_profiles; skipped above the pair limit.
void check_oracle_equality(const CornerSystem & sys, const oracle::Limits & limits, const std::string & instance,
        CheckResult & out);

struct FuzzReport
{
    std::vector<CheckResult> checks;
    bool ok() const;
};

// `count` rounds, each drawing one random graph, one regular system and one
// bipartition system and running every check that applies.
FuzzReport run_fuzz(std::uint64_t seed, std::size_t count);

}

#endif
