#include "mutgen/freeset.hpp"

#include <algorithm>
#include <functional>

#include "mutgen/errors.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

class Builtin final : public PrefixFunction {
public:
    Builtin(std::string name, std::size_t m) : PrefixFunction(m), name_(std::move(name)) {}
    std::string name() const override { return name_; }
    std::size_t out_len(std::size_t L) const override { return name_ == "shift" ? L + 1 : L; }

protected:
    BitWord eval(const BitTuple& x) const override
    {
        if (name_ == "identity")
            return x[0];
        if (name_ == "constant")
            return BitWord::zeros(x[0].size());
        if (name_ == "projection")
            return x.back();
        if (name_ == "shift")
            return BitWord::zeros(1) + x[0];
        BitWord out = x[0];
        for (std::size_t i = 1; i < x.size(); ++i)
            for (std::size_t p = 0; p < out.size(); ++p)
                out.set(p, out[p] ^ x[i][p]);
        return out;
    }

private:
    std::string name_;
};

class Table final : public PrefixFunction {
public:
    Table(std::size_t m, std::map<BitTuple, BitWord> entries) : PrefixFunction(m), entries_(std::move(entries))
    {
        for (const auto& [in, out] : entries_) {
            if (in.size() != m)
                throw UsageError("table entry has the wrong number of inputs");
            const auto L = in[0].size();
            auto [it, fresh] = len_.emplace(L, out.size());
            if (!fresh && it->second != out.size())
                throw UsageError("table outputs at input length " + std::to_string(L) + " differ in length");
        }
    }

    std::string name() const override { return "table"; }

    std::size_t out_len(std::size_t L) const override
    {
        auto it = len_.find(L);
        if (it == len_.end())
            throw UsageError("table has no entries at input length " + std::to_string(L));
        return it->second;
    }

protected:
    BitWord eval(const BitTuple& x) const override
    {
        auto it = entries_.find(x);
        if (it == entries_.end()) {
            std::string s;
            for (const auto& w : x)
                s += (s.empty() ? "" : ",") + w.str();
            throw UsageError("table has no entry for (" + s + ")");
        }
        return it->second;
    }

private:
    std::map<BitTuple, BitWord> entries_;
    std::map<std::size_t, std::size_t> len_;
};

BitTuple unpack(std::uint64_t v, std::size_t count, std::size_t len)
{
    BitTuple out(count);
    std::size_t bit = count * len;
    for (auto& w : out)
        for (std::size_t p = 0; p < len; ++p)
            w.push_back(static_cast<int>((v >> --bit) & 1));
    return out;
}

NullCode graph_code(const PrefixFunction& f, std::size_t inputs, const std::function<BitTuple(const BitTuple&)>& expand,
                    std::size_t horizon)
{
    std::map<std::size_t, NullCode::Level> levels;
    std::size_t top = 0;
    for (std::size_t L = 1; L <= horizon; ++L) {
        const std::size_t M = f.out_len(L);
        if (M < L)
            throw PreconditionError(f.name() + ": out_len(" + std::to_string(L) + ") is below " + std::to_string(L));
        if (levels.count(M))
            continue;
        if (inputs * M > 22)
            throw PreconditionError("graph code level " + std::to_string(M) + " is too large to enumerate");
        auto& level = levels[M];
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << (inputs * M)); ++v) {
            BitTuple z = unpack(v, inputs, M);
            BitTuple x = expand(z);
            for (auto& w : x)
                w = w.prefix(L);
            z.push_back(f(x));
            level.insert(std::move(z));
        }
        top = std::max(top, M);
    }
    return NullCode(inputs + 1, top + 1, std::move(levels), Rational(2), Rational(1, 2));
}

} // namespace

BitWord PrefixFunction::operator()(const BitTuple& x) const
{
    if (x.size() != arity_)
        throw PreconditionError(name() + " expects " + std::to_string(arity_) + " inputs");
    for (const auto& w : x)
        if (w.size() != x[0].size())
            throw PreconditionError(name() + " expects inputs of one length");
    BitWord out = eval(x);
    if (out.size() != out_len(x[0].size()))
        throw OracleViolation(name() + ": output length " + std::to_string(out.size()) + " differs from out_len");
    return out;
}

PrefixFunctionPtr builtin_oracle(const std::string& name, std::size_t m)
{
    static const std::vector<std::string> names{"identity", "constant", "xor", "projection", "shift"};
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown builtin oracle '" + name + "'");
    if (m == 0)
        throw UsageError("oracle arity must be at least 1");
    return std::make_shared<Builtin>(name, m);
}

PrefixFunctionPtr table_oracle(const json& j)
{
    try {
        const auto m = j.at("arity").get<std::size_t>();
        std::map<BitTuple, BitWord> entries;
        for (const auto& e : j.at("entries")) {
            BitTuple in;
            for (const auto& w : e.at("in"))
                in.push_back(BitWord::parse(w.get<std::string>()));
            entries[in] = BitWord::parse(e.at("out").get<std::string>());
        }
        return std::make_shared<Table>(m, std::move(entries));
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed oracle table: ") + e.what());
    }
}

bool check_monotone(const PrefixFunction& f, std::size_t max_len, std::string* why)
{
    const auto m = f.arity();
    for (std::size_t L = 1; L < max_len; ++L) {
        if (f.out_len(L) < L || f.out_len(L + 1) < f.out_len(L)) {
            if (why)
                *why = "out_len is not admissible at " + std::to_string(L);
            return false;
        }
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << (m * (L + 1))); ++v) {
            const BitTuple longer = unpack(v, m, L + 1);
            const BitTuple shorter = restrict_tuple(longer, L);
            if (!f(shorter).is_prefix_of(f(longer))) {
                if (why)
                    *why = "output grows inconsistently at input length " + std::to_string(L + 1);
                return false;
            }
        }
    }
    return true;
}

std::vector<Partition> coarse_partitions(std::size_t m)
{
    std::vector<Partition> out;
    Partition p;
    std::function<void(std::size_t)> rec = [&](std::size_t blocks) {
        if (p.size() == m) {
            if (blocks < m)
                out.push_back(p);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            p.push_back(b);
            rec(std::max(blocks, b + 1));
            p.pop_back();
        }
    };
    rec(0);
    return out;
}

std::size_t block_count(const Partition& p)
{
    std::size_t k = 0;
    for (auto b : p)
        k = std::max(k, b + 1);
    return k;
}

NullCode graph_null_code(const PrefixFunction& f, std::size_t horizon)
{
    return graph_code(f, f.arity(), [](const BitTuple& z) { return z; }, horizon);
}

NullCode restricted_graph_code(const PrefixFunction& f, const Partition& a, std::size_t horizon)
{
    if (a.size() != f.arity())
        throw PreconditionError("partition size does not match the oracle arity");
    return graph_code(f, block_count(a),
                      [&a](const BitTuple& z) {
                          BitTuple x;
                          for (auto b : a)
                              x.push_back(z[b]);
                          return x;
                      },
                      horizon);
}

FreeSubsetResult perfect_free_subset(const PrefixFunction& f, std::size_t rounds, std::size_t depth,
                                     const FusionOptions& options)
{
    std::size_t horizon = 0;
    while (horizon < depth && f.out_len(horizon + 1) <= depth)
        ++horizon;
    FreeSubsetResult res;
    res.task.rounds = rounds;
    res.task.options = options;
    res.task.options.max_depth = depth;
    res.task.null_codes.push_back(graph_null_code(f, horizon));
    for (const auto& a : coarse_partitions(f.arity()))
        res.task.null_codes.push_back(restricted_graph_code(f, a, horizon));
    res.fusion = fuse(res.task);
    return res;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::equals_argument:
        return "equals-argument";
    case Verdict::witnessed:
        return "freeness-witnessed";
    case Verdict::undecided:
        return "undecided-at-depth";
    case Verdict::violation:
        return "violation";
    }
    return "?";
}

FreenessReport free_check(const FinBinTree& tree, const PrefixFunction& f, std::size_t depth)
{
    FreenessReport rep;
    rep.depth = depth;
    for (auto v : {Verdict::equals_argument, Verdict::witnessed, Verdict::undecided, Verdict::violation})
        rep.counts[v] = 0;
    const auto nodes = branches_at(tree, depth);
    const auto K = tree.height();
    const auto m = f.arity();
    std::vector<std::size_t> idx(m, 0);
    if (nodes.empty())
        return rep;
    for (;;) {
        TupleVerdict tv;
        for (auto i : idx)
            tv.args.push_back(nodes[i]);
        tv.output = f(tv.args);
        const BitWord head = tv.output.prefix(depth);
        const auto O = tv.output.size();
        if (std::find(tv.args.begin(), tv.args.end(), head) != tv.args.end())
            tv.verdict = Verdict::equals_argument;
        else if (!tree.contains(tv.output.prefix(std::min(O, K))))
            tv.verdict = Verdict::witnessed;
        else if (O >= K && !tree.is_split(tv.output.prefix(K)) && tree.contains(tv.output.prefix(K)) &&
                 !tree.contains(tv.output.prefix(K).with(0)) && !tree.contains(tv.output.prefix(K).with(1)))
            tv.verdict = Verdict::violation;
        else
            tv.verdict = Verdict::undecided;
        ++rep.counts[tv.verdict];
        rep.tuples.push_back(std::move(tv));
        std::size_t q = m;
        while (q-- > 0) {
            if (++idx[q] < nodes.size())
                break;
            idx[q] = 0;
        }
        if (q >= m)
            break;
    }
    return rep;
}

json to_json(const FreenessReport& r)
{
    json counts = json::object();
    for (const auto& [v, c] : r.counts)
        counts[to_string(v)] = c;
    json tuples = json::array();
    for (const auto& t : r.tuples)
        tuples.push_back({{"args", to_json(t.args)}, {"output", t.output.str()}, {"verdict", to_string(t.verdict)}});
    return {{"depth", r.depth}, {"counts", counts}, {"tuples", tuples}};
}

} // namespace mutgen
