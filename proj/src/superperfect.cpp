#include "mutgen/superperfect.hpp"

#include <algorithm>
#include <set>

#include "mutgen/errors.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxFrontier = 1'000'000;

std::uint64_t max_entry(const NatWord& w, std::size_t upto)
{
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < upto && j < w.size(); ++j)
        m = std::max(m, w[j]);
    return m;
}

NatWord extended(NatWord w, std::uint64_t v)
{
    w.push_back(v);
    return w;
}

class TfCode final : public NatNdCode {
public:
    explicit TfCode(GrowthFn f) : NatNdCode(1), f_(std::move(f)) {}
    std::string name() const override { return "tf(" + f_.text + ")"; }
    bool meets(const std::vector<NatWord>& b) const override { return tf_member(f_, b[0]); }
    std::vector<NatWord> raw_avoid(const std::vector<NatWord>& b) const override
    {
        if (!meets(b))
            return b;
        return {tf_nd_witness(f_, b[0])};
    }

private:
    GrowthFn f_;
};

class PairCode final : public NatNdCode {
public:
    PairCode(NatWord s, NatWord t) : NatNdCode(2), s_(std::move(s)), t_(std::move(t))
    {
        if (s_.size() != t_.size())
            throw PreconditionError("pair code parameters must have equal length");
    }

    std::string name() const override { return "pair(" + format_nat_word(s_) + ";" + format_nat_word(t_) + ")"; }

    bool meets(const std::vector<NatWord>& b) const override
    {
        const auto& x = b[0];
        const auto& y = b[1];
        const auto compatible = [](const NatWord& a, const NatWord& c) { return is_prefix(a, c) || is_prefix(c, a); };
        if (!compatible(x, s_) || !compatible(y, t_))
            return false;
        const std::size_t upto = std::min(x.size(), y.size());
        for (std::size_t k = s_.size(); k <= upto; ++k)
            if (std::max(max_entry(x, k), max_entry(y, k)) < k - s_.size())
                return false;
        return true;
    }

    std::vector<NatWord> raw_avoid(const std::vector<NatWord>& b) const override
    {
        if (!meets(b))
            return b;
        NatWord x = b[0], y = b[1];
        // bring both up to the parameters first so the defining condition applies
        for (std::size_t i = x.size(); i < s_.size(); ++i)
            x.push_back(s_[i]);
        for (std::size_t i = y.size(); i < t_.size(); ++i)
            y.push_back(t_[i]);
        const std::uint64_t mx = std::max(max_entry(x, x.size()), max_entry(y, y.size()));
        const std::size_t len = std::max<std::size_t>({x.size(), y.size(), mx + s_.size() + 1});
        x.resize(len, 0);
        y.resize(len, 0);
        return {x, y};
    }

private:
    NatWord s_, t_;
};

} // namespace

GrowthFn GrowthFn::parse(std::string_view expr) { return GrowthFn{parse_d_expression(expr), std::string(expr)}; }

NatTreeView view_of(const FinNatTree& t)
{
    return NatTreeView{[&t](const NatWord& w) { return t.contains(w); }, [&t](const NatWord& w) { return t.is_split(w); },
                       [&t](const NatWord& w) { return t.successors(w); }, t.stem()};
}

NatTreeView full_nat_tree(std::uint64_t width, std::size_t depth)
{
    auto contains = [=](const NatWord& w) {
        return w.size() <= depth && std::all_of(w.begin(), w.end(), [&](std::uint64_t v) { return v < width; });
    };
    return NatTreeView{contains, [=](const NatWord& w) { return w.size() < depth && contains(w); },
                       [=](const NatWord& w) {
                           std::vector<std::uint64_t> out;
                           if (w.size() < depth && contains(w))
                               for (std::uint64_t v = 0; v < width; ++v)
                                   out.push_back(v);
                           return out;
                       },
                       NatWord{}};
}

bool tf_member(const GrowthFn& f, const NatWord& sigma)
{
    std::uint64_t mx = 0;
    for (std::size_t i = 0; i <= sigma.size(); ++i) {
        if (i > 0)
            mx = std::max(mx, sigma[i - 1]);
        if (f(mx) < i)
            return false;
    }
    return true;
}

NatWord tf_nd_witness(const GrowthFn& f, const NatWord& sigma)
{
    if (!tf_member(f, sigma))
        throw PreconditionError("word " + format_nat_word(sigma) + " is not in T_f");
    NatWord out = sigma;
    out.resize(f(max_entry(sigma, sigma.size())) + 1, 0);
    return out;
}

std::optional<NatWord> shortest_split_extension(const NatTreeView& t, const NatWord& u, std::size_t min_len)
{
    if (!t.contains(u))
        return std::nullopt;
    std::vector<NatWord> frontier{u};
    while (!frontier.empty()) {
        for (const auto& w : frontier)
            if (w.size() > min_len && t.is_split(w))
                return w;
        std::vector<NatWord> next;
        for (const auto& w : frontier)
            for (auto v : t.successors(w)) {
                next.push_back(extended(w, v));
                if (next.size() > kMaxFrontier)
                    throw InsufficientDepth("split search below " + format_nat_word(u) + " is too wide");
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::size_t g_sigma(const NatTreeView& t, const NatWord& sigma, std::uint64_t n)
{
    if (!t.is_split(sigma))
        throw PreconditionError(format_nat_word(sigma) + " is not a split node");
    std::optional<std::size_t> best;
    for (auto m : t.successors(sigma)) {
        if (m < n)
            continue;
        if (auto s = shortest_split_extension(t, extended(sigma, m), sigma.size()))
            best = std::min(best.value_or(s->size()), s->size());
    }
    if (!best)
        throw NoWitness("no split node above " + format_nat_word(sigma) + " through a successor >= " +
                        std::to_string(n));
    return *best;
}

std::size_t g_T(const FinNatTree& t, std::uint64_t n)
{
    const auto v = view_of(t);
    std::size_t best = 0;
    bool any = false;
    for (const auto& s : t.split_marks()) {
        try {
            best = std::max(best, g_sigma(v, s, n));
            any = true;
        } catch (const NoWitness&) {
        }
    }
    return any ? best + 1 : 0;
}

NatWord common_branch(const GrowthFn& f, const NatTreeView& t, std::size_t L, std::vector<BranchStep>* trace)
{
    NatWord sigma = t.stem;
    if (!tf_member(f, sigma))
        throw PreconditionError("stem " + format_nat_word(sigma) + " is not in T_f");
    while (sigma.size() < L) {
        if (!t.is_split(sigma))
            throw DominationFailure("node " + format_nat_word(sigma) + " is not a split node");
        const auto succ = t.successors(sigma);
        std::vector<std::optional<NatWord>> ext;
        for (auto v : succ)
            ext.push_back(shortest_split_extension(t, extended(sigma, v), sigma.size()));
        bool found = false;
        const std::uint64_t top = succ.empty() ? 0 : succ.back();
        for (std::uint64_t m = 1; m <= top && !found; ++m) {
            if (f(m) <= t.stem.size() || (m > 1 && f(m) <= f(m - 1)))
                throw PreconditionError("f must be increasing and exceed the stem length");
            std::optional<std::size_t> g;
            for (std::size_t q = 0; q < succ.size(); ++q)
                if (succ[q] >= m && ext[q])
                    g = std::min(g.value_or(ext[q]->size()), ext[q]->size());
            if (!g)
                break;
            if (*g >= f(m))
                continue;
            for (std::size_t q = 0; q < succ.size(); ++q)
                if (succ[q] >= m && ext[q] && ext[q]->size() == *g) {
                    if (trace)
                        trace->push_back({sigma, m, succ[q], *g, f(m)});
                    sigma = *ext[q];
                    found = true;
                    break;
                }
        }
        if (!found)
            throw DominationFailure("no m with g(" + format_nat_word(sigma) + ", m) < f(m) among the successors");
        for (std::size_t i = 0; i <= sigma.size(); ++i) {
            const NatWord p = nat_prefix(sigma, i);
            if (!t.contains(p) || !tf_member(f, p))
                throw OracleViolation("prefix " + format_nat_word(p) + " left T or T_f");
        }
    }
    return sigma;
}

bool pair_member(const NatWord& sigma_t, const NatWord& tau_t, const NatWord& sigma, const NatWord& tau)
{
    if (sigma.size() != tau.size() || !is_prefix(sigma_t, sigma) || !is_prefix(tau_t, tau))
        return false;
    const std::uint64_t mx = std::max(max_entry(sigma, sigma.size()), max_entry(tau, tau.size()));
    return mx + sigma_t.size() >= sigma.size();
}

PairResult find_pair(const NatTreeView& t, std::size_t L)
{
    PairResult res;
    const NatWord stem = t.stem;
    if (!t.is_split(stem))
        throw InsufficientDepth("the stem is not a split node");
    NatWord sigma = stem, tau = stem;
    res.sigmas.push_back(sigma);
    res.taus.push_back(tau);
    std::optional<std::uint64_t> first_choice;

    const auto step = [&](const NatWord& from, std::size_t bound, std::optional<std::uint64_t> banned,
                          std::uint64_t* chosen) {
        for (auto i : t.successors(from)) {
            if (i <= bound || (banned && i == *banned))
                continue;
            if (auto s = shortest_split_extension(t, extended(from, i), bound)) {
                if (chosen)
                    *chosen = i;
                return *s;
            }
        }
        throw InsufficientDepth("no split extension of " + format_nat_word(from) + " through a successor > " +
                                std::to_string(bound));
    };

    while (sigma.size() < L || tau.size() < L) {
        std::uint64_t choice = 0;
        NatWord next_sigma = step(sigma, tau.size(), std::nullopt, &choice);
        if (!first_choice)
            first_choice = choice;
        const NatWord cut = nat_prefix(next_sigma, tau.size());
        res.checkpoints.push_back({cut, tau, pair_member(stem, stem, cut, tau)});
        sigma = next_sigma;
        const bool first = res.taus.size() == 1;
        NatWord next_tau = step(tau, sigma.size(), first ? first_choice : std::nullopt, nullptr);
        const NatWord cut_tau = nat_prefix(next_tau, sigma.size());
        res.checkpoints.push_back({sigma, cut_tau, pair_member(stem, stem, sigma, cut_tau)});
        tau = next_tau;
        res.sigmas.push_back(sigma);
        res.taus.push_back(tau);
    }
    res.sigma = sigma;
    res.tau = tau;
    return res;
}

std::vector<NatWord> avoid(const NatNdCode& c, const std::vector<NatWord>& b)
{
    if (b.size() != c.arity())
        throw PreconditionError("input arity does not match code " + c.name());
    auto out = c.raw_avoid(b);
    if (out.size() != b.size())
        throw OracleViolation(c.name() + ": oracle changed the arity");
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!is_prefix(b[i], out[i]))
            throw OracleViolation(c.name() + ": output does not extend the input");
    if (c.meets(out))
        throw OracleViolation(c.name() + ": output still meets the set");
    return out;
}

NatNdCodePtr tf_code(const GrowthFn& f) { return std::make_shared<TfCode>(f); }

NatNdCodePtr pair_code(const NatWord& sigma_t, const NatWord& tau_t)
{
    return std::make_shared<PairCode>(sigma_t, tau_t);
}

NatNdCodePtr nat_code_from_json(const json& j)
{
    try {
        const auto name = j.at("name").get<std::string>();
        const auto& params = j.at("params");
        if (name == "tf")
            return tf_code(GrowthFn::parse(params.at("f").get<std::string>()));
        if (name == "pair")
            return pair_code(parse_nat_word(params.value("sigma", std::string("-"))),
                             parse_nat_word(params.value("tau", std::string("-"))));
        throw UsageError("unknown Baire-space code '" + name + "'");
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed Baire-space code: ") + e.what());
    }
}

SuperperfectResult avoid_meager_superperfect(const std::vector<NatNdCodePtr>& codes, std::size_t depth,
                                             std::size_t split_width)
{
    if (split_width == 0)
        throw PreconditionError("split width must be positive");
    for (const auto& c : codes)
        if (c->arity() != 1)
            throw PreconditionError("code " + c->name() + " does not have arity 1");
    SuperperfectResult res;
    std::set<NatWord> nodes{NatWord{}}, splits;
    std::function<void(NatWord)> grow = [&](NatWord u) {
        for (std::size_t c = 0; c < codes.size(); ++c) {
            NatWord out = avoid(*codes[c], {u})[0];
            res.commitments.push_back({c, u, out});
            u = std::move(out);
        }
        for (std::size_t i = 0; i <= u.size(); ++i)
            nodes.insert(nat_prefix(u, i));
        if (u.size() >= depth)
            return;
        splits.insert(u);
        for (std::uint64_t v = 0; v < split_width; ++v)
            grow(extended(u, v));
    };
    grow(NatWord{});
    res.tree = FinNatTree(std::move(nodes), std::move(splits), split_width);
    return res;
}

} // namespace mutgen
