#ifndef SEPSYS_ORACLE_HH
#define SEPSYS_ORACLE_HH

#include <sepsys/core.hh>
#include <sepsys/profiles.hh>

#include <optional>
#include <string>
#include <vector>

// Naive reimplementations used as ground truth. Nothing in here calls the
// predicates of core, profiles, quotient or tangletree; only the raw tables
// (inv, leq, corner, order) of the inputs are read.
namespace sepsys::oracle {

struct Limits
{
    std::size_t max_pairs = 24;
};

struct Violation
{
    std::string check;
    std::string witness;
};

struct VerificationReport
{
    std::string instance;
    std::vector<std::string> checks;
    std::vector<Violation> violations;
    double seconds = 0.0;

    bool ok() const { return violations.empty(); }
};

// Every orientation, filtered by consistency and the profile property.
ProfileSet brute_profiles(const CornerSystem & sys, const Limits & limits = {});

// Minimum order of a separation of u distinguishing p and q.
std::optional<int> brute_min_order(const Universe & u, const Profile & p, const Profile & q);

// Tree-set-ness in u, efficient distinguishing of every distinguishable pair,
// every element efficiently distinguishing some pair, and every element of
// P ∩ T below a maximal element of P ∩ T.
VerificationReport verify_tree(const std::vector<SepId> & tree, const ProfileSet & profiles, const Universe & u,
        const std::string & instance = "");

// The three guarantees of the abstract tree set in a corner system: tree set
// of sys, every pair of distinct profiles distinguished, every element
// distinguishing some pair, maximal-element property.
VerificationReport verify_abstract_tree(const std::vector<SepId> & tree, const ProfileSet & profiles,
        const CornerSystem & sys, const std::string & instance = "");

// Good images recomputed by pairwise scan, sorted.
std::vector<Bits> brute_good_images(const CornerSystem & sys, const ProfileSet & profiles);

}

#endif
