#ifndef MUTGEN_RANDOM_POSET_HPP
#define MUTGEN_RANDOM_POSET_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mutgen/codes.hpp"
#include "mutgen/fusion.hpp"
#include "mutgen/measure.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

/// Condition (k, n, T, t_0..t_{n-1}, B): the maximal nodes of T are exactly
/// the t_i, all of length k, and B is a clopen subset of [t_0] x ... x
/// [t_{n-1}] of positive measure.
class RandomCondition {
public:
    RandomCondition(std::size_t k, FinBinTree t, std::vector<BitWord> leaves, ClopenSet b);

    /// ({root}, one leaf, B = whole space).
    static RandomCondition trivial();

    std::size_t k() const { return k_; }
    std::size_t n() const { return leaves_.size(); }
    const FinBinTree& tree() const { return t_; }
    const std::vector<BitWord>& leaves() const { return leaves_; }
    const ClopenSet& b() const { return b_; }

    bool same_finite_part(const RandomCondition& o) const
    {
        return k_ == o.k_ && t_ == o.t_ && leaves_ == o.leaves_;
    }

private:
    std::size_t k_;
    FinBinTree t_;
    std::vector<BitWord> leaves_;
    ClopenSet b_;
};

/// The index map j : n^p -> n^q fixing n^q with t^p_i extending t^q_{j(i)},
/// if one exists (it is unique when the t^q are distinct).
std::optional<std::vector<std::size_t>> index_map(const RandomCondition& p, const RandomCondition& q);

bool leq(const RandomCondition& p, const RandomCondition& q);

std::optional<RandomCondition> common_extension(const RandomCondition& p, const RandomCondition& q);

struct LinkedKey {
    std::size_t k = 0;
    std::vector<BitWord> tree_nodes;
    std::vector<BitWord> leaves;
    Box c;

    friend bool operator==(const LinkedKey&, const LinkedKey&) = default;
};

/// Lexicographically least box C with coordinates of length `resolution`
/// such that measure(B and C) > 2/3 measure(C). Throws NoKeyAtResolution.
LinkedKey linked_class_key(const RandomCondition& p, std::size_t resolution);

struct RandomRun {
    FusionResult result;
    std::vector<RandomCondition> chain;
    /// Per null-control step: measure of the excluded part of B relative to
    /// measure(B), when small enough to compute exactly.
    std::vector<std::optional<Rational>> excluded;
};

/// Each round splits every leaf (children t_i0 keep index i, children t_i1
/// get index n + i) and then shrinks B to a box avoiding the newly covered
/// null-code levels, absorbing that box into the finite part.
RandomRun generic_random_tree(const std::vector<NullCode>& codes, std::size_t rounds,
                              const FusionOptions& options = {});

nlohmann::json to_json(const RandomCondition& p);
RandomCondition random_condition_from_json(const nlohmann::json& j);

} // namespace mutgen

#endif
