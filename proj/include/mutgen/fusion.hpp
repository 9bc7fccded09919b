#ifndef MUTGEN_FUSION_HPP
#define MUTGEN_FUSION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutgen/codes.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

struct FusionOptions {
    /// 0 keeps candidate extensions in lexicographic order; any other value
    /// shuffles them deterministically.
    std::uint64_t seed = 0;
    /// Bits added per null-control step.
    std::size_t max_width = 2;
    /// Candidate extensions examined per null-control step before giving up.
    std::uint64_t node_budget = 2'000'000;
    /// When set, the final tree has exactly this depth.
    std::optional<std::size_t> max_depth;
};

struct FusionTask {
    std::vector<NdCodePtr> nd_codes;
    std::vector<NullCode> null_codes;
    std::size_t rounds = 1;
    FusionOptions options;
};

/// One avoid call: the code, the leaves it was given, and what it returned.
struct Commitment {
    std::size_t code = 0;
    BitTuple tuple;
    std::size_t stage = 0;
    Box box;
};

/// One null-control step: leaves went from length `from` to `to`.
struct NullStep {
    std::size_t stage = 0;
    std::size_t from = 0;
    std::size_t to = 0;
    /// Expected number of hits under independent uniform extensions; below 1
    /// it certifies that a safe extension exists.
    Rational expected_hits;
    std::uint64_t candidates = 0;
};

struct FusionResult {
    FinBinTree tree;
    std::size_t depth = 0;
    std::vector<BitWord> leaves;
    std::vector<Commitment> commitments;
    std::vector<NullStep> null_steps;
    std::size_t null_stage_threshold = 0;
};

struct VerifyReport {
    bool pass = true;
    std::uint64_t nd_tuples = 0;
    std::uint64_t nd_unchecked = 0;
    std::uint64_t null_checks = 0;
    std::string counterexample;
};

/// Calls f on every k-tuple of pairwise distinct indices below n, in
/// lexicographic order of index tuples. Stops early when f returns false.
void for_each_distinct_tuple(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f);

FusionResult fuse(const FusionTask& task);

/// Extends every leaf (all of one length L) by `width` bits so that no tuple
/// of distinct leaves lands in J_m for m in (L, L + width]. Backtracking
/// search over leaves in order; throws TailTooFat when it fails.
NullStep null_control(std::vector<BitWord>& leaves, const std::vector<NullCode>& codes, std::size_t width,
                      const FusionOptions& opt, std::size_t stage);

/// Smallest threshold from which no tuple of distinct leaves hits any null
/// code (levels where two coordinates still agree are skipped).
std::size_t null_hit_threshold(const std::vector<BitWord>& leaves, const std::vector<NullCode>& codes);

/// Brute force over all tuples of distinct leaves of `tree`.
VerifyReport verify_free_tuples(const FinBinTree& tree, const FusionTask& task, std::size_t threshold);

FusionTask fusion_task_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FusionResult& r);
nlohmann::json to_json(const VerifyReport& r);

} // namespace mutgen

#endif
