#ifndef MUTGEN_THMA_HPP
#define MUTGEN_THMA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mutgen/codes.hpp"
#include "mutgen/measure.hpp"
#include "mutgen/trees.hpp"

namespace mutgen {

using DFunction = std::function<std::uint64_t(std::uint64_t)>;

/// Parses an expression in one variable (n, k or x) such as "2n+2",
/// "n^2 + 3" or "3*(k+1)".
DFunction parse_d_expression(std::string_view text);

/// d_0 = 0, d_{i+1} = d(d_i); l_i = d_i - d_{i-1}; c_i = sum 2^{j-1} l_j.
struct Schedule {
    std::size_t N = 0;
    std::vector<std::uint64_t> d, l, c;
};

Schedule build_schedule(const DFunction& d, std::size_t N);

/// sigma_s for every s of length at most `levels`; |sigma_s| = d_{|s|+1}.
struct SigmaSystem {
    std::size_t levels = 0;
    std::map<BitWord, BitWord> sigma;
};

SigmaSystem build_sigma(const BitWord& r, const Schedule& sched, std::size_t levels);
/// Bits of r read by build_sigma up to the given level: c_{levels+1}.
std::uint64_t bits_needed(const Schedule& sched, std::size_t levels);
/// Pseudorandom word: mt19937_64 outputs, least significant bit first.
BitWord random_word(std::uint64_t seed, std::size_t length);

struct ClosedTree {
    FinBinTree tree;
    std::size_t depth = 0;
    /// Sibling segments differ everywhere: 2^levels leaves, all at depth.
    bool perfect = false;
};

/// Prefix closure of the system. Throws DegenerateTree when two siblings
/// coincide.
ClosedTree close_tree(const SigmaSystem& sys, const Schedule& sched);

/// epsilon_m = 2^{-(2m+2)n - m}.
struct EpsilonSeq {
    std::size_t n = 1;
    Rational operator()(std::size_t m) const;
};

/// f_S(0), ..., f_S(count-1).
std::vector<std::size_t> f_S(const NullCode& code, const EpsilonSeq& eps, std::size_t count);

/// A derived level set stored as a union of bit patterns over an interval.
/// For J-sets the pattern concatenates the n coordinates, each restricted
/// to [lo, hi); for K-sets it is a single word over [lo, hi).
struct DerivedSet {
    std::size_t k = 0, j = 0;
    std::uint64_t lo = 0, hi = 0;
    std::size_t arity = 1;
    CubeUnion cubes{0};

    std::uint64_t width() const { return hi - lo; }
    BigInt count() const { return cubes.count(); }
    /// count / 2^(arity * width)
    Rational ratio() const;
};

DerivedSet derive_J(const NullCode& code, const Schedule& sched, std::size_t j, std::size_t k);
DerivedSet derive_K(const DerivedSet& J, const Schedule& sched, std::size_t j, std::size_t k, std::size_t n);

/// Whether s (n words over [d_{2k+j}, d_{2k+2+j})) lies in J_k^j, decided
/// from the defining formula.
bool in_J(const NullCode& code, const Schedule& sched, std::size_t j, std::size_t k, const BitTuple& s);

struct Inequality {
    std::string claim;
    std::size_t index = 0;
    std::size_t j = 0;
    Rational lhs, rhs;
    bool strict = true;
    bool holds = false;
};

struct ClaimsReport {
    std::vector<std::size_t> f_s;
    std::vector<Inequality> rows;
    /// First m from which the tail inequality holds for every later m in
    /// the window; window size when it never settles.
    std::size_t tail_settles_at = 0;
    std::uint64_t cover_samples = 0;
    bool cover_ok = true;
    bool pass = true;
};

/// Indices m < window - 1 for the tail inequality and k with 2k+2+j <= window
/// for the derived-set inequalities. Pass means every derived-set row holds
/// for k >= the index from which the tail inequality has settled.
ClaimsReport check_claims(const NullCode& code, const Schedule& sched, const EpsilonSeq& eps, std::size_t window,
                          std::uint64_t seed = 1);

/// 1 + the largest k with r restricted to [c_{2k+j}, c_{2k+2+j}) in K_k^j,
/// over the k that fit in r and the schedule; 0 when there is none.
std::size_t escape_index(const BitWord& r, const NullCode& code, const Schedule& sched, std::size_t j);

struct MutualReport {
    bool pass = true;
    std::uint64_t tuples = 0;
    std::uint64_t checks = 0;
    std::string counterexample;
};

/// For every tuple of distinct branches of length d_horizon, checks
/// x restricted to [d_{2k+j}, d_{2k+2+j}) is outside J_k^j for all k from
/// max(separation index, m_j) on.
MutualReport verify_mutual_random(const FinBinTree& tree, const NullCode& code, const Schedule& sched,
                                  std::size_t horizon, std::size_t m0, std::size_t m1);

nlohmann::json to_json(const Schedule& s);
nlohmann::json to_json(const ClaimsReport& r);
nlohmann::json to_json(const MutualReport& r);

} // namespace mutgen

#endif
