#include "mutgen/cohen_poset.hpp"

#include <algorithm>
#include <set>

#include "mutgen/errors.hpp"

namespace mutgen {

CohenCondition::CohenCondition(FinBinTree t, std::size_t n) : t_(std::move(t)), n_(n)
{
    for (const auto& l : t_.maximal_nodes())
        if (l.size() != n_)
            throw PreconditionError("maximal node " + l.str() + " does not have length " + std::to_string(n_));
}

bool leq(const CohenCondition& p, const CohenCondition& q)
{
    if (p.height() < q.height())
        return false;
    for (const auto& w : q.tree().nodes())
        if (!p.tree().contains(w))
            return false;
    const auto qleaves = q.leaves();
    const auto pleaves = p.leaves();
    // the maximal nodes of q all have length q.n
    return std::all_of(pleaves.begin(), pleaves.end(), [&](const BitWord& l) {
        return std::binary_search(qleaves.begin(), qleaves.end(), l.prefix(q.height()));
    });
}

CohenCondition extend_split(const CohenCondition& p)
{
    std::vector<BitWord> leaves;
    for (const auto& l : p.leaves()) {
        leaves.push_back(l.with(0));
        leaves.push_back(l.with(1));
    }
    return CohenCondition(prefix_close(leaves), p.height() + 1);
}

CohenCondition extend_avoid(const CohenCondition& p, const std::vector<BitWord>& base, const NowhereDenseCode& code,
                            std::vector<Commitment>* log, std::size_t code_index, std::size_t stage)
{
    if (base.size() != code.arity())
        throw PreconditionError("base has " + std::to_string(base.size()) + " nodes but the code has arity " +
                                std::to_string(code.arity()));
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!p.tree().contains(base[i]))
            throw PreconditionError("base node " + base[i].str() + " is not in the tree");
        for (std::size_t j = i + 1; j < base.size(); ++j)
            if (base[i] == base[j])
                throw PreconditionError("base nodes must be pairwise distinct");
    }
    std::vector<BitWord> leaves = p.leaves();
    std::vector<std::vector<std::size_t>> above(base.size());
    for (std::size_t q = 0; q < base.size(); ++q)
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (base[q].is_prefix_of(leaves[i]))
                above[q].push_back(i);

    std::vector<std::size_t> pick(base.size(), 0);
    bool more = std::all_of(above.begin(), above.end(), [](const auto& a) { return !a.empty(); });
    while (more) {
        std::vector<std::size_t> idx;
        for (std::size_t q = 0; q < base.size(); ++q)
            idx.push_back(above[q][pick[q]]);
        if (std::set<std::size_t>(idx.begin(), idx.end()).size() == idx.size()) {
            Box box;
            for (auto i : idx)
                box.push_back(leaves[i]);
            Box out = avoid(code, box);
            for (std::size_t q = 0; q < idx.size(); ++q)
                leaves[idx[q]] = out[q];
            std::size_t len = 0;
            for (const auto& l : leaves)
                len = std::max(len, l.size());
            for (auto& l : leaves)
                l = l.padded(len);
            if (log)
                log->push_back({code_index, std::move(box), stage, std::move(out)});
        }
        std::size_t q = base.size();
        while (q-- > 0) {
            if (++pick[q] < above[q].size())
                break;
            pick[q] = 0;
        }
        more = q < base.size();
    }
    const std::size_t n = leaves.front().size();
    return CohenCondition(prefix_close(leaves), n);
}

FusionResult generic_tree(const std::vector<NdCodePtr>& codes, std::size_t rounds)
{
    if (rounds == 0)
        throw PreconditionError("generic_tree needs at least one round");
    FusionResult res;
    CohenCondition p(FinBinTree(), 0);
    for (std::size_t r = 0; r < rounds; ++r) {
        p = extend_split(p);
        for (std::size_t c = 0; c < codes.size(); ++c) {
            const auto& code = *codes[c];
            const auto start = p.leaves();
            for_each_distinct_tuple(start.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
                // current maximal nodes above the leaves present at the start of this pass
                const auto now = p.leaves();
                std::vector<BitWord> base;
                for (auto i : idx)
                    base.push_back(*std::find_if(now.begin(), now.end(),
                                                 [&](const BitWord& l) { return start[i].is_prefix_of(l); }));
                p = extend_avoid(p, base, code, &res.commitments, c, r);
                return true;
            });
        }
    }
    res.leaves = p.leaves();
    res.depth = p.height();
    res.tree = p.tree();
    return res;
}

} // namespace mutgen
