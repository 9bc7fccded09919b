#ifndef MUTGEN_FREESET_HPP
#define MUTGEN_FREESET_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutgen/codes.hpp"
#include "mutgen/fusion.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

/// Finite approximation of f : (2^omega)^m -> 2^omega. Inputs are m words of
/// one length L; the output has length out_len(L) >= L, and extending the
/// inputs extends the output.
class PrefixFunction {
public:
    explicit PrefixFunction(std::size_t arity) : arity_(arity) {}
    virtual ~PrefixFunction() = default;

    std::size_t arity() const { return arity_; }
    virtual std::string name() const = 0;
    virtual std::size_t out_len(std::size_t L) const = 0;
    /// Checks the input shape and the output length.
    BitWord operator()(const BitTuple& x) const;

protected:
    virtual BitWord eval(const BitTuple& x) const = 0;

private:
    std::size_t arity_;
};

using PrefixFunctionPtr = std::shared_ptr<const PrefixFunction>;

/// identity (x_0), constant (zeros), xor (bitwise), projection (x_{m-1}),
/// shift (0 followed by x_0).
PrefixFunctionPtr builtin_oracle(const std::string& name, std::size_t m);
/// {"arity", "entries": [{"in": [...], "out": "..."}]}; out_len is read off
/// the entries and must be consistent.
PrefixFunctionPtr table_oracle(const nlohmann::json& j);

/// Exhaustive check of the output-length law and monotonicity for inputs
/// of length 1 up to the given length.
bool check_monotone(const PrefixFunction& f, std::size_t max_len, std::string* why = nullptr);

/// Partition of {0..m-1} as a block index per element, blocks numbered in
/// order of first appearance.
using Partition = std::vector<std::size_t>;

/// All partitions with fewer than m blocks, in lexicographic order of their
/// block index strings.
std::vector<Partition> coarse_partitions(std::size_t m);
std::size_t block_count(const Partition& p);

/// Null code of arity m+1 covering the graph: level out_len(L) holds every
/// (x_0..x_{m-1}, f(x)) with inputs cut to length L, for 1 <= L <= horizon.
NullCode graph_null_code(const PrefixFunction& f, std::size_t horizon);
/// Same for the restriction of f to the diagonal where coordinates in one
/// block agree; arity = blocks + 1.
NullCode restricted_graph_code(const PrefixFunction& f, const Partition& a, std::size_t horizon);

struct FreeSubsetResult {
    FusionResult fusion;
    FusionTask task;
};

/// Fusion against the graph code and every restricted graph code, with
/// final depth exactly `depth`.
FreeSubsetResult perfect_free_subset(const PrefixFunction& f, std::size_t rounds, std::size_t depth,
                                     const FusionOptions& options = {});

enum class Verdict { equals_argument, witnessed, undecided, violation };

std::string to_string(Verdict v);

struct TupleVerdict {
    BitTuple args;
    BitWord output;
    Verdict verdict = Verdict::undecided;
};

struct FreenessReport {
    std::size_t depth = 0;
    std::vector<TupleVerdict> tuples;
    std::map<Verdict, std::size_t> counts;

    std::size_t count(Verdict v) const
    {
        auto it = counts.find(v);
        return it == counts.end() ? 0 : it->second;
    }
};

/// Every m-tuple (repetitions allowed) of nodes of length `depth`.
FreenessReport free_check(const FinBinTree& tree, const PrefixFunction& f, std::size_t depth);

nlohmann::json to_json(const FreenessReport& r);

} // namespace mutgen

#endif
