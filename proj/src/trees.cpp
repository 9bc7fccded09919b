#include "mutgen/trees.hpp"

#include <algorithm>

#include "mutgen/errors.hpp"

namespace mutgen {

FinBinTree::FinBinTree() : nodes_{BitWord()} {}

FinBinTree::FinBinTree(std::set<BitWord> nodes) : nodes_(std::move(nodes))
{
    if (!nodes_.count(BitWord()))
        throw PreconditionError("tree lacks the empty word");
    for (const auto& w : nodes_)
        if (!w.empty() && !nodes_.count(w.prefix(w.size() - 1)))
            throw PreconditionError("tree is not prefix-closed at " + w.str());
}

FinBinTree FinBinTree::full(std::size_t depth)
{
    std::set<BitWord> nodes{BitWord()};
    std::vector<BitWord> level{BitWord()};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<BitWord> next;
        for (const auto& w : level)
            for (int b : {0, 1})
                next.push_back(w.with(b));
        nodes.insert(next.begin(), next.end());
        level = std::move(next);
    }
    return FinBinTree(std::move(nodes));
}

std::size_t FinBinTree::height() const
{
    std::size_t h = 0;
    for (const auto& w : nodes_)
        h = std::max(h, w.size());
    return h;
}

std::vector<BitWord> FinBinTree::maximal_nodes() const
{
    std::vector<BitWord> out;
    for (const auto& w : nodes_)
        if (!contains(w.with(0)) && !contains(w.with(1)))
            out.push_back(w);
    return out;
}

std::vector<BitWord> branches_at(const FinBinTree& t, std::size_t depth)
{
    std::vector<BitWord> out;
    for (const auto& w : t.nodes())
        if (w.size() == depth)
            out.push_back(w);
    return out;
}

bool is_perfect_to(const FinBinTree& t, std::size_t depth)
{
    std::set<BitWord> below_split;
    for (const auto& w : t.nodes())
        if (t.is_split(w))
            for (std::size_t n = 0; n <= w.size(); ++n)
                below_split.insert(w.prefix(n));
    auto above_split = [&](const BitWord& w) {
        for (std::size_t n = 0; n < w.size(); ++n)
            if (t.is_split(w.prefix(n)))
                return true;
        return false;
    };
    for (const auto& w : t.nodes())
        if (w.size() < depth && !below_split.count(w) && !above_split(w))
            return false;
    for (const auto& leaf : t.maximal_nodes())
        if (leaf.size() < depth)
            return false;
    return true;
}

FinBinTree sacks_encode(const BitWord& x, std::size_t depth)
{
    // position -> forced bit
    std::vector<int> forced(depth, -1);
    std::size_t ones = 0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        std::size_t pos = n + ones;
        if (pos < depth)
            forced[pos] = x[n];
        ones += static_cast<std::size_t>(x[n]);
    }
    std::set<BitWord> nodes{BitWord()};
    std::vector<BitWord> level{BitWord()};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<BitWord> next;
        for (const auto& w : level)
            for (int b : {0, 1})
                if (forced[d] < 0 || forced[d] == b)
                    next.push_back(w.with(b));
        nodes.insert(next.begin(), next.end());
        level = std::move(next);
    }
    return FinBinTree(std::move(nodes));
}

BitWord sacks_decode(const BitWord& y)
{
    BitWord x;
    std::size_t ones = 0;
    for (std::size_t n = 0;; ++n) {
        std::size_t pos = n + ones;
        if (pos >= y.size())
            break;
        x.push_back(y[pos]);
        ones += static_cast<std::size_t>(y[pos]);
    }
    return x;
}

FinNatTree::FinNatTree() : nodes_{NatWord{}} {}

FinNatTree::FinNatTree(std::set<NatWord> nodes, std::set<NatWord> split_marks, std::size_t split_width)
    : nodes_(std::move(nodes)), split_(std::move(split_marks)), split_width_(split_width)
{
    if (!nodes_.count(NatWord{}))
        throw PreconditionError("tree lacks the empty word");
    for (const auto& w : nodes_)
        if (!w.empty() && !nodes_.count(nat_prefix(w, w.size() - 1)))
            throw PreconditionError("tree is not prefix-closed at " + format_nat_word(w));
    for (const auto& s : split_) {
        if (!nodes_.count(s))
            throw PreconditionError("split mark outside tree: " + format_nat_word(s));
        if (successors(s).size() < split_width_)
            throw PreconditionError("split node " + format_nat_word(s) + " has fewer than split_width successors");
    }
}

std::vector<std::uint64_t> FinNatTree::successors(const NatWord& w) const
{
    std::vector<std::uint64_t> out;
    // Children of w are contiguous right after w in lexicographic order.
    auto it = nodes_.upper_bound(w);
    for (; it != nodes_.end() && is_prefix(w, *it); ++it)
        if (it->size() == w.size() + 1)
            out.push_back(it->back());
    return out;
}

std::size_t FinNatTree::height() const
{
    std::size_t h = 0;
    for (const auto& w : nodes_)
        h = std::max(h, w.size());
    return h;
}

std::vector<NatWord> FinNatTree::maximal_nodes() const
{
    std::vector<NatWord> out;
    for (const auto& w : nodes_) {
        auto it = nodes_.upper_bound(w);
        if (it == nodes_.end() || !is_prefix(w, *it))
            out.push_back(w);
    }
    return out;
}

NatWord FinNatTree::stem() const
{
    NatWord w;
    for (;;) {
        if (is_split(w))
            return w;
        auto succ = successors(w);
        if (succ.size() != 1)
            return w;
        w.push_back(succ.front());
    }
}

} // namespace mutgen
