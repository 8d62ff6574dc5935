#include <sepsys/core.hh>

#include <algorithm>
#include <sstream>

namespace sepsys {

std::vector<SepId> to_ids(const Bits & bits)
{
    std::vector<SepId> ids;
    ids.reserve(bits.count());
    for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i))
        ids.push_back(SepId(i));
    return ids;
}

Bits from_ids(std::size_t size, const std::vector<SepId> & ids)
{
    Bits bits(size);
    for (SepId s : ids)
        bits.set(s);
    return bits;
}

Universe Universe::build(std::size_t n, const InvFn & inv, const LeqFn & leq,
        const OpFn & join, const OpFn & meet, std::optional<std::vector<int>> ord,
        std::vector<std::string> labels)
{
    Universe u;
    u.elements_.resize(n);
    u.inv_.resize(n);
    u.up_.assign(n, Bits(n));
    u.down_.assign(n, Bits(n));
    u.join_.resize(n * n);
    u.meet_.resize(n * n);

    for (SepId s = 0; s < n; ++s) {
        u.elements_[s] = s;
        u.inv_[s] = inv(s);
        if (u.inv_[s] >= n)
            throw precondition_error("universe: involution of " + std::to_string(s) + " is out of range");
    }

    for (SepId s = 0; s < n; ++s)
        for (SepId t = 0; t < n; ++t) {
            if (leq(s, t)) {
                u.up_[s].set(t);
                u.down_[t].set(s);
            }
            SepId j = join(s, t), m = meet(s, t);
            if (j >= n || m >= n)
                throw precondition_error("universe: join/meet of " + std::to_string(s) + ","
                        + std::to_string(t) + " is out of range");
            u.join_[s * n + t] = j;
            u.meet_[s * n + t] = m;
        }

    if (ord) {
        if (ord->size() != n)
            throw precondition_error("universe: order function has the wrong length");
        u.ord_ = std::move(ord);
    }

    if (labels.empty())
        for (SepId s = 0; s < n; ++s)
            labels.push_back(std::to_string(s));
    if (labels.size() != n)
        throw precondition_error("universe: label count does not match element count");
    u.labels_ = std::move(labels);
    return u;
}

int Universe::order(SepId s) const
{
    if (! ord_)
        throw precondition_error("universe has no order function");
    return (*ord_)[s];
}

int Universe::max_order() const
{
    if (! ord_)
        throw precondition_error("universe has no order function");
    return ord_->empty() ? 0 : *std::max_element(ord_->begin(), ord_->end());
}

namespace
{
    // Caps witness lists so a badly broken table does not produce megabytes.
    struct Collector
    {
        ValidationReport & report;
        std::size_t per_kind = 5;
        std::size_t count = 0;

        bool add(const std::string & msg)
        {
            if (count < per_kind)
                report.violations.push_back(msg);
            ++count;
            return count < per_kind;
        }
    };

    std::string pair_str(SepId s, SepId t)
    {
        std::ostringstream o;
        o << "(" << s << "," << t << ")";
        return o.str();
    }
}

ValidationReport validate_universe(const Universe & u)
{
    ValidationReport report;
    const std::size_t n = u.size();

    {
        Collector c{report};
        for (SepId s = 0; s < n; ++s)
            if (u.inv(u.inv(s)) != s && ! c.add("inv is not an involution at " + std::to_string(s)))
                break;
    }
    {
        Collector c{report};
        for (SepId s = 0; s < n; ++s)
            if (! u.leq(s, s) && ! c.add("leq not reflexive at " + std::to_string(s)))
                break;
    }
    {
        Collector c{report};
        for (SepId s = 0; s < n; ++s)
            for (auto t = u.up_set(s).find_first(); t != Bits::npos; t = u.up_set(s).find_next(t))
                if (t != s && u.leq(SepId(t), s))
                    c.add("leq not antisymmetric at " + pair_str(s, SepId(t)));
    }
    {
        Collector c{report};
        for (SepId s = 0; s < n; ++s)
            for (auto t = u.up_set(s).find_first(); t != Bits::npos; t = u.up_set(s).find_next(t))
                if (! u.up_set(SepId(t)).is_subset_of(u.up_set(s)))
                    c.add("leq not transitive at " + pair_str(s, SepId(t)));
    }
    {
        Collector c{report};
        for (SepId s = 0; s < n; ++s)
            for (SepId t = 0; t < n; ++t)
                if (u.leq(s, t) != u.leq(u.inv(t), u.inv(s)))
                    c.add("inv is not order-reversing at " + pair_str(s, t));
    }
    {
        Collector cj{report}, cm{report}, cd{report};
        for (SepId s = 0; s < n; ++s)
            for (SepId t = 0; t < n; ++t) {
                SepId j = u.join(s, t), m = u.meet(s, t);
                if ((u.up_set(s) & u.up_set(t)) != u.up_set(j))
                    cj.add("join is not the supremum of " + pair_str(s, t));
                if ((u.down_set(s) & u.down_set(t)) != u.down_set(m))
                    cm.add("meet is not the infimum of " + pair_str(s, t));
                if (u.inv(j) != u.meet(u.inv(s), u.inv(t)))
                    cd.add("inv(join) != meet(inv, inv) at " + pair_str(s, t));
            }
    }
    if (u.has_order()) {
        Collector cs{report}, cn{report}, cb{report};
        for (SepId s = 0; s < n; ++s) {
            if (u.order(s) != u.order(u.inv(s)))
                cs.add("order is not inv-symmetric at " + std::to_string(s));
            if (u.order(s) < 0)
                cn.add("negative order at " + std::to_string(s));
        }
        for (SepId s = 0; s < n; ++s)
            for (SepId t = 0; t < n; ++t)
                if (u.order(u.join(s, t)) + u.order(u.meet(s, t)) > u.order(s) + u.order(t))
                    cb.add("order is not submodular at " + pair_str(s, t));
    }
    return report;
}

SubSystem subsystem_k(const Universe & u, int k)
{
    if (! u.has_order())
        throw precondition_error("subsystem_k: universe has no order function");
    if (k < 0)
        throw precondition_error("subsystem_k: k must be non-negative");
    SubSystem result{&u, Bits(u.size())};
    for (SepId s = 0; s < u.size(); ++s)
        if (u.order(s) < k)
            result.members.set(s);
    return result;
}

CornerSystem CornerSystem::build(std::size_t id_space, std::vector<SepId> elements,
        const InvFn & inv, const LeqFn & leq, const CornerFn & corner, const Universe * universe)
{
    CornerSystem s;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

    s.members_ = Bits(id_space);
    s.local_.assign(id_space, std::size_t(-1));
    s.inv_.assign(id_space, no_sep);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] >= id_space)
            throw precondition_error("corner system: element id out of range");
        s.members_.set(elements[i]);
        s.local_[elements[i]] = i;
    }
    for (SepId e : elements) {
        SepId ei = inv(e);
        if (ei >= id_space || ! s.members_.test(ei))
            throw precondition_error("corner system: not closed under involution at " + std::to_string(e));
        s.inv_[e] = ei;
    }

    const std::size_t m = elements.size();
    s.up_.assign(m, Bits(id_space));
    s.down_.assign(m, Bits(id_space));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (leq(elements[i], elements[j])) {
                s.up_[i].set(elements[j]);
                s.down_[j].set(elements[i]);
            }

    s.corner_.assign(m * m, no_sep);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (auto c = corner(elements[i], elements[j])) {
                if (*c >= id_space || ! s.members_.test(*c))
                    throw precondition_error("corner system: corner of " + std::to_string(elements[i]) + ","
                            + std::to_string(elements[j]) + " lies outside the system");
                s.corner_[i * m + j] = *c;
            }

    s.elements_ = std::move(elements);
    s.universe_ = universe;
    return s;
}

std::optional<SepId> CornerSystem::corner(SepId s, SepId t) const
{
    SepId c = corner_[local(s) * size() + local(t)];
    if (c == no_sep)
        return std::nullopt;
    return c;
}

std::optional<SepId> CornerSystem::corner_meet(SepId s, SepId t) const
{
    auto c = corner(inv(s), inv(t));
    if (! c)
        return std::nullopt;
    return inv(*c);
}

ValidationReport validate_corner_system(const CornerSystem & sys)
{
    ValidationReport report;
    Collector ci{report}, cr{report}, ca{report}, ct{report}, co{report}, cc{report}, cs{report}, cp{report};
    const auto & els = sys.elements();
    for (SepId s : els) {
        if (sys.inv(sys.inv(s)) != s)
            ci.add("inv is not an involution at " + std::to_string(s));
        if (! sys.leq(s, s))
            cr.add("leq not reflexive at " + std::to_string(s));
    }
    for (SepId s : els)
        for (SepId t : els) {
            if (s != t && sys.leq(s, t) && sys.leq(t, s))
                ca.add("leq not antisymmetric at " + pair_str(s, t));
            if (sys.leq(s, t) && ! sys.up_set(t).is_subset_of(sys.up_set(s)))
                ct.add("leq not transitive at " + pair_str(s, t));
            if (sys.leq(s, t) != sys.leq(sys.inv(t), sys.inv(s)))
                co.add("inv is not order-reversing at " + pair_str(s, t));

            auto c = sys.corner(s, t);
            if ((sys.leq(s, t) || sys.leq(t, s)) && ! c)
                cc.add("corner undefined on comparable pair " + pair_str(s, t));
            if (c.has_value() != sys.corner(t, s).has_value())
                cs.add("corner map not symmetric at " + pair_str(s, t));
            if (c) {
                Bits upper = sys.up_set(s) & sys.up_set(t);
                if (! upper.test(*c) || ! upper.is_subset_of(sys.up_set(*c)))
                    cp.add("corner is not the supremum of " + pair_str(s, t));
            }
        }
    return report;
}

CornerSystem as_corner_system(const Universe & u)
{
    return CornerSystem::build(u.size(), u.elements(),
            [&](SepId s) { return u.inv(s); },
            [&](SepId s, SepId t) { return u.leq(s, t); },
            [&](SepId s, SepId t) -> std::optional<SepId> { return u.join(s, t); },
            &u);
}

CornerSystem induced_corner_system(const Universe & u, const Bits & members)
{
    if (members.size() != u.size())
        throw precondition_error("induced corner system: member set is over a different universe");
    return CornerSystem::build(u.size(), to_ids(members),
            [&](SepId s) { return u.inv(s); },
            [&](SepId s, SepId t) { return u.leq(s, t); },
            [&](SepId s, SepId t) -> std::optional<SepId> {
                SepId j = u.join(s, t);
                if (members.test(j))
                    return j;
                return std::nullopt;
            },
            &u);
}

}
