#ifndef MUTGEN_TREES_HPP
#define MUTGEN_TREES_HPP

#include <cstddef>
#include <set>
#include <vector>

#include "mutgen/words.hpp"

namespace mutgen {

/// Finite prefix-closed subtree of 2^{<omega}, stored extensionally.
/// Always contains the empty word.
class FinBinTree {
public:
    FinBinTree();
    /// Validates that `nodes` contains the root and is closed under prefixes.
    explicit FinBinTree(std::set<BitWord> nodes);

    static FinBinTree full(std::size_t depth);

    const std::set<BitWord>& nodes() const { return nodes_; }
    bool contains(const BitWord& w) const { return nodes_.count(w) != 0; }
    std::size_t size() const { return nodes_.size(); }
    /// Length of the longest node.
    std::size_t height() const;
    /// Nodes without children, in lexicographic order.
    std::vector<BitWord> maximal_nodes() const;
    bool is_split(const BitWord& w) const { return contains(w.with(0)) && contains(w.with(1)); }

    friend bool operator==(const FinBinTree&, const FinBinTree&) = default;

private:
    std::set<BitWord> nodes_;
};

/// Smallest prefix-closed set containing the root and every given word.
template <class Range>
FinBinTree prefix_close(const Range& words)
{
    std::set<BitWord> nodes{BitWord()};
    for (const BitWord& w : words)
        for (std::size_t n = 0; n <= w.size(); ++n)
            nodes.insert(w.prefix(n));
    return FinBinTree(std::move(nodes));
}

std::vector<BitWord> branches_at(const FinBinTree& t, std::size_t depth);

/// Every node shorter than `depth` is comparable with a splitting node of
/// `t`, and every maximal node has length at least `depth`.
bool is_perfect_to(const FinBinTree& t, std::size_t depth);

/// Tree of words of length <= depth that carry x(n) at position
/// n + (number of ones among x(0..n-1)) for every such position they reach.
FinBinTree sacks_encode(const BitWord& x, std::size_t depth);
/// Longest x recoverable from the branch prefix y.
BitWord sacks_decode(const BitWord& y);

/// Finite approximation of a superperfect tree: a prefix-closed set of
/// natural-number words plus the nodes designated as omega-splitting.
class FinNatTree {
public:
    FinNatTree();
    /// Validates prefix closure and that every split mark has at least
    /// `split_width` immediate successors.
    FinNatTree(std::set<NatWord> nodes, std::set<NatWord> split_marks, std::size_t split_width = 3);

    const std::set<NatWord>& nodes() const { return nodes_; }
    const std::set<NatWord>& split_marks() const { return split_; }
    std::size_t split_width() const { return split_width_; }
    bool contains(const NatWord& w) const { return nodes_.count(w) != 0; }
    bool is_split(const NatWord& w) const { return split_.count(w) != 0; }
    std::vector<std::uint64_t> successors(const NatWord& w) const;
    std::size_t height() const;
    /// Nodes without successors.
    std::vector<NatWord> maximal_nodes() const;
    /// Follows the unique path from the root until a split-marked node or a
    /// node that does not have exactly one successor.
    NatWord stem() const;

    friend bool operator==(const FinNatTree&, const FinNatTree&) = default;

private:
    std::set<NatWord> nodes_;
    std::set<NatWord> split_;
    std::size_t split_width_ = 3;
};

} // namespace mutgen

#endif
