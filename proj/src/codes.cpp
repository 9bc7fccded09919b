#include "mutgen/codes.hpp"

#include <algorithm>

#include "mutgen/errors.hpp"

namespace mutgen {

using nlohmann::json;

NullCode::NullCode(std::size_t arity, std::size_t horizon, std::map<std::size_t, Level> levels, Rational a,
                   Rational rho)
    : arity_(arity), horizon_(horizon), levels_(std::move(levels)), a_(std::move(a)), rho_(std::move(rho))
{
    if (arity_ == 0)
        throw PreconditionError("null code arity must be at least 1");
    if (rho_ < Rational(0) || !(rho_ < Rational(1)))
        throw PreconditionError("null code ratio must lie in [0,1), got " + rho_.to_string());
    if (a_ < Rational(0))
        throw PreconditionError("null code tail constant must be nonnegative");
    for (auto it = levels_.begin(); it != levels_.end();) {
        const auto m = it->first;
        if (m >= horizon_)
            throw PreconditionError("null code level " + std::to_string(m) + " lies at or past the horizon");
        for (const auto& t : it->second) {
            if (t.size() != arity_)
                throw PreconditionError("null code level " + std::to_string(m) + " has a tuple of wrong arity");
            for (const auto& w : t)
                if (w.size() != m)
                    throw PreconditionError("null code level " + std::to_string(m) + " has word " + w.str() +
                                            " of wrong length");
        }
        it = it->second.empty() ? levels_.erase(it) : std::next(it);
    }
    for (std::size_t k = 0; k <= horizon_; ++k)
        if (null_tail(*this, k) > declared_tail(*this, k))
            throw PreconditionError("stored mass from level " + std::to_string(k) + " exceeds the declared tail " +
                                    declared_tail(*this, k).to_string());
}

const NullCode::Level& NullCode::level(std::size_t m) const
{
    static const Level none;
    auto it = levels_.find(m);
    return it == levels_.end() ? none : it->second;
}

Rational NullCode::level_mass(std::size_t m) const
{
    const auto& l = level(m);
    if (l.empty())
        return Rational(0);
    return Rational(static_cast<std::int64_t>(l.size())) *
           Rational::pow2(-static_cast<std::int64_t>(m * arity_));
}

std::optional<std::size_t> NullCode::top_level() const
{
    if (levels_.empty())
        return std::nullopt;
    return levels_.rbegin()->first;
}

bool NullCode::hits(const BitTuple& x, std::size_t m) const
{
    const auto& l = level(m);
    if (l.empty())
        return false;
    return l.count(restrict_tuple(x, m)) != 0;
}

Rational null_tail(const NullCode& c, std::size_t k)
{
    Rational total;
    for (auto it = c.levels().lower_bound(k); it != c.levels().end(); ++it)
        total += c.level_mass(it->first);
    return total;
}

Rational declared_tail(const NullCode& c, std::size_t k)
{
    Rational r = c.tail_a();
    for (std::size_t i = 0; i < k && !r.is_zero(); ++i)
        r *= c.tail_rho();
    return r;
}

std::vector<std::size_t> null_hits(const NullCode& c, const BitTuple& x, std::size_t lo, std::size_t hi)
{
    if (x.size() != c.arity())
        throw PreconditionError("tuple arity does not match null code");
    for (const auto& w : x)
        if (w.size() < hi)
            throw PreconditionError("tuple coordinate " + w.str() + " is shorter than " + std::to_string(hi));
    std::vector<std::size_t> out;
    for (auto it = c.levels().lower_bound(lo); it != c.levels().end() && it->first < hi; ++it)
        if (c.hits(x, it->first))
            out.push_back(it->first);
    return out;
}

Box avoid(const NowhereDenseCode& c, const Box& b)
{
    if (b.size() != c.arity())
        throw PreconditionError("box arity " + std::to_string(b.size()) + " does not match code " + c.name());
    Box out = c.raw_avoid(b);
    if (out.size() != b.size())
        throw OracleViolation(c.name() + ": oracle changed the arity");
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_prefix_of(out[i]))
            throw OracleViolation(c.name() + ": oracle output " + out[i].str() + " does not extend " + b[i].str());
    if (auto m = c.meets(out); m && *m)
        throw OracleViolation(c.name() + ": oracle output still meets the set");
    return out;
}

namespace {

class DiagCode final : public NowhereDenseCode {
public:
    explicit DiagCode(std::size_t m) : NowhereDenseCode(m) {}
    std::string name() const override { return "diag(" + std::to_string(arity()) + ")"; }

    std::optional<bool> meets(const Box& b) const override
    {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (b[i].compatible(b[j]))
                    return true;
        return false;
    }

    Box raw_avoid(const Box& b) const override
    {
        Box out = b;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                if (!out[i].compatible(out[j]))
                    continue;
                if (out[i] == out[j]) {
                    out[i].push_back(0);
                    out[j].push_back(1);
                } else if (out[i].size() < out[j].size()) {
                    out[i].push_back(1 - out[j][out[i].size()]);
                } else {
                    out[j].push_back(1 - out[i][out[j].size()]);
                }
            }
        return out;
    }

    json to_json() const override
    {
        return {{"kind", "builtin"}, {"name", "diag"}, {"params", {{"m", arity()}}}};
    }
};

class EvenZerosCode final : public NowhereDenseCode {
public:
    EvenZerosCode() : NowhereDenseCode(1) {}
    std::string name() const override { return "even-zeros"; }

    std::optional<bool> meets(const Box& b) const override
    {
        for (std::size_t i = 0; i < b[0].size(); i += 2)
            if (b[0][i] == 1)
                return false;
        return true;
    }

    Box raw_avoid(const Box& b) const override
    {
        if (!*meets(b))
            return b;
        BitWord w = b[0];
        while (w.size() % 2 != 0)
            w.push_back(0);
        w.push_back(1);
        return {w};
    }

    json to_json() const override { return {{"kind", "builtin"}, {"name", "even-zeros"}, {"params", json::object()}}; }
};

class AgreeTailCode final : public NowhereDenseCode {
public:
    explicit AgreeTailCode(std::size_t p) : NowhereDenseCode(2), p_(p) {}
    std::string name() const override { return "agree-tail(" + std::to_string(p_) + ")"; }

    std::optional<bool> meets(const Box& b) const override
    {
        const auto n = std::min(b[0].size(), b[1].size());
        for (std::size_t i = p_; i < n; ++i)
            if (b[0][i] != b[1][i])
                return false;
        return true;
    }

    Box raw_avoid(const Box& b) const override
    {
        if (!*meets(b))
            return b;
        const auto len = std::max({b[0].size(), b[1].size(), p_});
        return {b[0].padded(len).with(0), b[1].padded(len).with(1)};
    }

    json to_json() const override
    {
        return {{"kind", "builtin"}, {"name", "agree-tail"}, {"params", {{"p", p_}}}};
    }

private:
    std::size_t p_;
};

class TreeCode final : public NowhereDenseCode {
public:
    TreeCode(std::size_t arity, const std::set<BitTuple>& nodes) : NowhereDenseCode(arity), nodes_(nodes)
    {
        for (const auto& t : nodes_) {
            if (t.size() != arity)
                throw PreconditionError("tree code node has wrong arity");
            for (const auto& w : t)
                if (w.size() != t[0].size())
                    throw PreconditionError("tree code node coordinates must share one length");
            depth_ = std::max(depth_, t[0].size());
        }
        for (const auto& t : nodes_)
            if (t[0].size() == depth_)
                top_.push_back(t);
    }

    std::string name() const override { return "tree"; }

    std::optional<bool> meets(const Box& b) const override
    {
        for (const auto& t : top_) {
            bool ok = true;
            for (std::size_t i = 0; i < b.size() && ok; ++i)
                ok = t[i].compatible(b[i]);
            if (ok)
                return true;
        }
        return false;
    }

    Box raw_avoid(const Box& b) const override
    {
        if (!*meets(b))
            return b;
        // Lexicographic search over completions of b to length depth_.
        std::size_t total = 0;
        for (const auto& w : b)
            if (w.size() < depth_)
                total += depth_ - w.size();
        if (total > 24)
            throw OracleViolation("tree code: avoidance search too large");
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << total); ++v) {
            Box cand = b;
            std::size_t bit = total;
            for (auto& w : cand)
                while (w.size() < depth_)
                    w.push_back(static_cast<int>((v >> --bit) & 1));
            if (!*meets(cand))
                return cand;
        }
        throw OracleViolation("tree code: box has no extension avoiding the set");
    }

    json to_json() const override
    {
        json nodes = json::array();
        for (const auto& t : nodes_) {
            json tuple = json::array();
            for (const auto& w : t)
                tuple.push_back(w.str());
            nodes.push_back(tuple);
        }
        return {{"kind", "tree"}, {"arity", arity()}, {"nodes", nodes}};
    }

private:
    std::set<BitTuple> nodes_;
    std::size_t depth_ = 0;
    std::vector<BitTuple> top_;
};

} // namespace

NdCodePtr diag_code(std::size_t m)
{
    if (m < 2)
        throw PreconditionError("diag code needs arity at least 2");
    return std::make_shared<DiagCode>(m);
}

NdCodePtr even_zeros_code() { return std::make_shared<EvenZerosCode>(); }

NdCodePtr agree_tail_code(std::size_t p) { return std::make_shared<AgreeTailCode>(p); }

NdCodePtr tree_code(std::size_t arity, const std::set<BitTuple>& nodes)
{
    return std::make_shared<TreeCode>(arity, nodes);
}

MeagerCode::MeagerCode(std::vector<NdCodePtr> ps) : parts(std::move(ps))
{
    if (parts.empty())
        throw PreconditionError("meager code needs at least one part");
    for (const auto& p : parts)
        if (p->arity() != parts.front()->arity())
            throw PreconditionError("meager code parts must share one arity");
}

} // namespace mutgen
