#ifndef MUTGEN_COHEN_POSET_HPP
#define MUTGEN_COHEN_POSET_HPP

#include <cstddef>
#include <vector>

#include "mutgen/codes.hpp"
#include "mutgen/fusion.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

/// Condition (t, n): a finite tree all of whose maximal nodes have length n.
class CohenCondition {
public:
    CohenCondition() = default;
    CohenCondition(FinBinTree t, std::size_t n);

    const FinBinTree& tree() const { return t_; }
    std::size_t height() const { return n_; }
    std::vector<BitWord> leaves() const { return t_.maximal_nodes(); }

    friend bool operator==(const CohenCondition&, const CohenCondition&) = default;

private:
    FinBinTree t_;
    std::size_t n_ = 0;
};

/// p extends q: p.t contains q.t, p.n >= q.n, and every maximal node of p.t
/// lies above a maximal node of q.t.
bool leq(const CohenCondition& p, const CohenCondition& q);

CohenCondition extend_split(const CohenCondition& p);

/// Applies the code to every tuple of maximal nodes lying above the base
/// nodes, propagating each extension, then pads all leaves with zeros to a
/// common length.
CohenCondition extend_avoid(const CohenCondition& p, const std::vector<BitWord>& base, const NowhereDenseCode& code,
                            std::vector<Commitment>* log = nullptr, std::size_t code_index = 0,
                            std::size_t stage = 0);

/// Alternates extend_split with extend_avoid over every code and every
/// tuple of distinct current leaves.
FusionResult generic_tree(const std::vector<NdCodePtr>& codes, std::size_t rounds);

} // namespace mutgen

#endif
