#ifndef SEPSYS_CORE_HH
#define SEPSYS_CORE_HH

#include <sepsys/errors.hh>

#include <boost/dynamic_bitset.hpp>

#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sepsys {

using SepId = std::uint32_t;
inline constexpr SepId no_sep = std::numeric_limits<SepId>::max();

using Bits = boost::dynamic_bitset<std::uint64_t>;

std::vector<SepId> to_ids(const Bits & bits);
Bits from_ids(std::size_t size, const std::vector<SepId> & ids);

// Anything with an involution and a partial order over dense ids.
template <typename S>
concept SeparationOrder = requires(const S & s, SepId a, SepId b) {
    { s.inv(a) } -> std::convertible_to<SepId>;
    { s.leq(a, b) } -> std::convertible_to<bool>;
    { s.elements() } -> std::convertible_to<const std::vector<SepId> &>;
    { s.contains(a) } -> std::convertible_to<bool>;
};

// A finite lattice of oriented separations with an order-reversing
// involution and an optional integer order function. Immutable.
class Universe
{
    public:
        using InvFn = std::function<SepId (SepId)>;
        using LeqFn = std::function<bool (SepId, SepId)>;
        using OpFn = std::function<SepId (SepId, SepId)>;

        // Tables are taken as given; validate_universe() reports anything
        // that is not actually a lattice.
        static Universe build(std::size_t n, const InvFn & inv, const LeqFn & leq,
                const OpFn & join, const OpFn & meet,
                std::optional<std::vector<int>> ord = std::nullopt,
                std::vector<std::string> labels = {});

        std::size_t size() const { return inv_.size(); }
        const std::vector<SepId> & elements() const { return elements_; }
        bool contains(SepId s) const { return s < size(); }

        SepId inv(SepId s) const { return inv_[s]; }
        bool leq(SepId s, SepId t) const { return up_[s].test(t); }
        bool less(SepId s, SepId t) const { return s != t && leq(s, t); }
        const Bits & up_set(SepId s) const { return up_[s]; }
        const Bits & down_set(SepId s) const { return down_[s]; }

        SepId join(SepId s, SepId t) const { return join_[s * size() + t]; }
        SepId meet(SepId s, SepId t) const { return meet_[s * size() + t]; }

        bool has_order() const { return ord_.has_value(); }
        int order(SepId s) const;
        int max_order() const;

        const std::string & label(SepId s) const { return labels_[s]; }

    private:
        Universe() = default;

        std::vector<SepId> elements_;
        std::vector<SepId> inv_;
        std::vector<Bits> up_, down_;
        std::vector<SepId> join_, meet_;
        std::optional<std::vector<int>> ord_;
        std::vector<std::string> labels_;
};

struct ValidationReport
{
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_universe(const Universe & u);

// An inv-closed subset of a universe. The universe must outlive it.
struct SubSystem
{
    const Universe * universe = nullptr;
    Bits members;

    std::vector<SepId> elements() const { return to_ids(members); }
};

// S_k: everything of order < k.
SubSystem subsystem_k(const Universe & u, int k);

// Separation system with a partial corner (supremum) map, over ids drawn
// from some larger id space (usually a universe). Element ids are the ids of
// the ambient space, so subsystems and regularizations share them.
class CornerSystem
{
    public:
        using InvFn = std::function<SepId (SepId)>;
        using LeqFn = std::function<bool (SepId, SepId)>;
        using CornerFn = std::function<std::optional<SepId> (SepId, SepId)>;

        CornerSystem() = default;

        static CornerSystem build(std::size_t id_space, std::vector<SepId> elements,
                const InvFn & inv, const LeqFn & leq, const CornerFn & corner,
                const Universe * universe = nullptr);

        std::size_t id_space() const { return members_.size(); }
        std::size_t size() const { return elements_.size(); }
        const std::vector<SepId> & elements() const { return elements_; }
        const Bits & member_bits() const { return members_; }
        bool contains(SepId s) const { return s < members_.size() && members_.test(s); }

        SepId inv(SepId s) const { return inv_[s]; }
        bool leq(SepId s, SepId t) const { return up_[local(s)].test(t); }
        bool less(SepId s, SepId t) const { return s != t && leq(s, t); }
        const Bits & up_set(SepId s) const { return up_[local(s)]; }
        const Bits & down_set(SepId s) const { return down_[local(s)]; }

        // s ∨ t when the corner map is defined there.
        std::optional<SepId> corner(SepId s, SepId t) const;
        // s ∧ t := (s* ∨ t*)*.
        std::optional<SepId> corner_meet(SepId s, SepId t) const;

        // Universe the ids came from, if any (used for order-function hints).
        const Universe * universe() const { return universe_; }

        std::size_t local(SepId s) const { return local_[s]; }

    private:
        std::vector<SepId> elements_;
        Bits members_;
        std::vector<std::size_t> local_;
        std::vector<SepId> inv_;
        std::vector<Bits> up_, down_;
        std::vector<SepId> corner_;
        const Universe * universe_ = nullptr;
};

// Violations of the corner-system axioms (partial order, order-reversing
// involution, corner defined on comparable pairs, symmetric, supremum).
ValidationReport validate_corner_system(const CornerSystem & s);

// The whole universe with its total join as corner map.
CornerSystem as_corner_system(const Universe & u);

// Members of a universe with the induced corner map: s ∨ t is defined iff the
// universe's join lies in the member set.
CornerSystem induced_corner_system(const Universe & u, const Bits & members);

struct Classification
{
    bool small = false;
    bool cosmall = false;
    bool degenerate = false;
    bool trivial = false;
    bool cotrivial = false;

    bool operator== (const Classification &) const = default;
};

template <SeparationOrder S>
bool is_trivial_in(const S & sys, SepId s)
{
    for (SepId t : sys.elements()) {
        if (t == s || t == sys.inv(s))
            continue;
        SepId ti = sys.inv(t);
        if (sys.leq(s, t) && sys.leq(s, ti) && s != ti)
            return true;
    }
    return false;
}

template <SeparationOrder S>
Classification classify(const S & sys, SepId s)
{
    if (! sys.contains(s))
        throw precondition_error("classify: separation " + std::to_string(s) + " is not in the system");
    Classification c;
    SepId si = sys.inv(s);
    c.degenerate = (s == si);
    c.small = sys.leq(s, si);
    c.cosmall = sys.leq(si, s);
    c.trivial = is_trivial_in(sys, s);
    c.cotrivial = is_trivial_in(sys, si);
    return c;
}

template <SeparationOrder S>
bool is_regular_system(const S & sys)
{
    for (SepId s : sys.elements())
        if (sys.leq(s, sys.inv(s)))
            return false;
    return true;
}

template <SeparationOrder S>
bool nested(const S & sys, SepId s, SepId t)
{
    SepId si = sys.inv(s), ti = sys.inv(t);
    return sys.leq(s, t) || sys.leq(s, ti) || sys.leq(si, t) || sys.leq(si, ti);
}

template <SeparationOrder S>
bool points_towards(const S & sys, SepId s, SepId t)
{
    return sys.leq(s, t) || sys.leq(s, sys.inv(t));
}

// No p, q from distinct involution pairs with p* ≤ q.
template <SeparationOrder S>
bool is_consistent(const S & sys, const std::vector<SepId> & chosen)
{
    for (SepId p : chosen)
        for (SepId q : chosen) {
            if (q == p || q == sys.inv(p))
                continue;
            if (sys.leq(sys.inv(p), q))
                return false;
        }
    return true;
}

// Exactly one of s, s* for every element of the system.
template <SeparationOrder S>
bool is_orientation(const S & sys, const Bits & chosen)
{
    for (SepId s : sys.elements()) {
        bool a = chosen.test(s), b = chosen.test(sys.inv(s));
        if (sys.inv(s) == s ? ! a : a == b)
            return false;
    }
    for (auto i = chosen.find_first(); i != Bits::npos; i = chosen.find_next(i))
        if (! sys.contains(SepId(i)))
            return false;
    return true;
}

// X is closed under inv first; then every pair must be nested and no element
// may be degenerate, trivial or co-trivial in the system.
template <SeparationOrder S>
bool is_tree_set(const std::vector<SepId> & xs, const S & sys)
{
    std::vector<SepId> closed;
    for (SepId x : xs) {
        closed.push_back(x);
        closed.push_back(sys.inv(x));
    }
    for (SepId x : closed) {
        if (x == sys.inv(x) || is_trivial_in(sys, x) || is_trivial_in(sys, sys.inv(x)))
            return false;
    }
    for (SepId x : closed)
        for (SepId y : closed)
            if (! nested(sys, x, y))
                return false;
    return true;
}

// Maximal elements of a finite set under the system's order, ascending id.
template <SeparationOrder S>
std::vector<SepId> maximal_elements(const S & sys, const std::vector<SepId> & xs)
{
    std::vector<SepId> result;
    for (SepId x : xs) {
        bool dominated = false;
        for (SepId y : xs)
            if (y != x && sys.leq(x, y)) {
                dominated = true;
                break;
            }
        if (! dominated)
            result.push_back(x);
    }
    return result;
}

}

#endif
