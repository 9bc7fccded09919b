#ifndef MUTGEN_SUPERPERFECT_HPP
#define MUTGEN_SUPERPERFECT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mutgen/thma.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

/// Increasing function on the naturals given by an expression.
struct GrowthFn {
    DFunction f;
    std::string text;

    static GrowthFn parse(std::string_view expr);
    std::uint64_t operator()(std::uint64_t k) const { return f(k); }
};

/// Read-only access to a (possibly implicit) tree on omega^{<omega}.
struct NatTreeView {
    std::function<bool(const NatWord&)> contains;
    std::function<bool(const NatWord&)> is_split;
    /// Immediate successor values in increasing order.
    std::function<std::vector<std::uint64_t>(const NatWord&)> successors;
    NatWord stem;
};

/// View of an explicit tree; the tree must outlive the view.
NatTreeView view_of(const FinNatTree& t);
/// Every node of length < depth is split with successors 0..width-1.
NatTreeView full_nat_tree(std::uint64_t width, std::size_t depth);

/// sigma in T_f: f(max_{j<i} sigma(j)) >= i for all i <= |sigma|, with the
/// max over no indices taken to be 0.
bool tf_member(const GrowthFn& f, const NatWord& sigma);
/// sigma padded with zeros to length f(max sigma) + 1.
NatWord tf_nd_witness(const GrowthFn& f, const NatWord& sigma);

/// min |tau| over split tau containing sigma^<m> for some m >= n.
std::size_t g_sigma(const NatTreeView& t, const NatWord& sigma, std::uint64_t n);
/// 1 + max of g_sigma over the split nodes where it is defined (0 if none).
std::size_t g_T(const FinNatTree& t, std::uint64_t n);

/// Shortest split node extending u of length greater than `min_len`,
/// lexicographically least among those, if the tree has one.
std::optional<NatWord> shortest_split_extension(const NatTreeView& t, const NatWord& u, std::size_t min_len);

struct BranchStep {
    NatWord sigma;
    std::uint64_t m = 0;
    std::uint64_t m_used = 0;
    std::size_t g = 0;
    std::uint64_t f_m = 0;
};

/// Split nodes sigma_0 = stem, sigma_1, ... in T and T_f until the length
/// reaches L; returns the last one. Throws DominationFailure.
NatWord common_branch(const GrowthFn& f, const NatTreeView& t, std::size_t L, std::vector<BranchStep>* trace = nullptr);

/// <sigma, tau> in T_<sigma~, tau~>.
bool pair_member(const NatWord& sigma_t, const NatWord& tau_t, const NatWord& sigma, const NatWord& tau);

struct PairCheckpoint {
    NatWord sigma;
    NatWord tau;
    bool holds = false;
};

struct PairResult {
    NatWord sigma;
    NatWord tau;
    std::vector<NatWord> sigmas;
    std::vector<NatWord> taus;
    std::vector<PairCheckpoint> checkpoints;
};

/// Alternating construction of sigma_n, tau_n with interleaved lengths
/// until both reach length L. Throws InsufficientDepth.
PairResult find_pair(const NatTreeView& t, std::size_t L);

/// Closed nowhere dense set of k-tuples in omega^omega, given by avoidance.
class NatNdCode {
public:
    explicit NatNdCode(std::size_t arity) : arity_(arity) {}
    virtual ~NatNdCode() = default;
    std::size_t arity() const { return arity_; }
    virtual std::string name() const = 0;
    virtual std::vector<NatWord> raw_avoid(const std::vector<NatWord>& b) const = 0;
    virtual bool meets(const std::vector<NatWord>& b) const = 0;

private:
    std::size_t arity_;
};

using NatNdCodePtr = std::shared_ptr<const NatNdCode>;

/// Checked avoidance: output extends the input and misses the set.
std::vector<NatWord> avoid(const NatNdCode& c, const std::vector<NatWord>& b);

/// [T_f] as a nowhere dense code.
NatNdCodePtr tf_code(const GrowthFn& f);
/// [T_<sigma~, tau~>] as a nowhere dense code on pairs.
NatNdCodePtr pair_code(const NatWord& sigma_t, const NatWord& tau_t);
NatNdCodePtr nat_code_from_json(const nlohmann::json& j);

struct NatCommitment {
    std::size_t code = 0;
    NatWord input;
    NatWord output;
};

struct SuperperfectResult {
    FinNatTree tree;
    std::vector<NatCommitment> commitments;
};

/// Superperfect approximation of the given depth none of whose maximal
/// nodes meets any of the codes (all of arity 1).
SuperperfectResult avoid_meager_superperfect(const std::vector<NatNdCodePtr>& codes, std::size_t depth,
                                             std::size_t split_width);

} // namespace mutgen

#endif
