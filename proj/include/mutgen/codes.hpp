#ifndef MUTGEN_CODES_HPP
#define MUTGEN_CODES_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutgen/measure.hpp"
#include "mutgen/rational.hpp"
#include "mutgen/words.hpp"

namespace mutgen {

/// Null set in (2^omega)^n given as {x : x|m in J_m for infinitely many m}.
/// Only levels below the horizon are stored; all later levels are empty.
/// The declared tail bound a * rho^k is checked against the stored masses.
class NullCode {
public:
    using Level = std::set<BitTuple>;

    NullCode(std::size_t arity, std::size_t horizon, std::map<std::size_t, Level> levels, Rational a, Rational rho);

    std::size_t arity() const { return arity_; }
    std::size_t horizon() const { return horizon_; }
    const std::map<std::size_t, Level>& levels() const { return levels_; }
    const Level& level(std::size_t m) const;
    const Rational& tail_a() const { return a_; }
    const Rational& tail_rho() const { return rho_; }

    /// |J_m| / (2^m)^n.
    Rational level_mass(std::size_t m) const;
    /// Highest nonempty level, if any.
    std::optional<std::size_t> top_level() const;
    /// x restricted coordinatewise to length m lies in J_m.
    bool hits(const BitTuple& x, std::size_t m) const;

private:
    std::size_t arity_;
    std::size_t horizon_;
    std::map<std::size_t, Level> levels_;
    Rational a_;
    Rational rho_;
};

/// Certified bound on the mass of levels k, k+1, ...: the exact stored mass.
Rational null_tail(const NullCode& c, std::size_t k);
/// The declared geometric bound a * rho^k.
Rational declared_tail(const NullCode& c, std::size_t k);
/// All m in [lo, hi) with x|m in J_m. Levels past the horizon are empty.
std::vector<std::size_t> null_hits(const NullCode& c, const BitTuple& x, std::size_t lo, std::size_t hi);

/// Closed nowhere dense set in (2^omega)^n presented by an avoidance oracle.
class NowhereDenseCode {
public:
    explicit NowhereDenseCode(std::size_t arity) : arity_(arity) {}
    virtual ~NowhereDenseCode() = default;

    std::size_t arity() const { return arity_; }
    virtual std::string name() const = 0;
    /// Extension of b disjoint from the set. Unchecked; use avoid().
    virtual Box raw_avoid(const Box& b) const = 0;
    /// Whether the box meets the set, when the code can decide it exactly.
    virtual std::optional<bool> meets(const Box&) const { return std::nullopt; }
    virtual nlohmann::json to_json() const = 0;

private:
    std::size_t arity_;
};

using NdCodePtr = std::shared_ptr<const NowhereDenseCode>;

/// Runs the oracle and checks that the answer extends b and, when the code
/// can decide membership, misses the set.
Box avoid(const NowhereDenseCode& c, const Box& b);

/// {(x_0..x_{m-1}) : x_i = x_j for some i != j}.
NdCodePtr diag_code(std::size_t m);
/// {x : x(2n) = 0 for all n}.
NdCodePtr even_zeros_code();
/// {(x, y) : x(i) = y(i) for all i >= p}.
NdCodePtr agree_tail_code(std::size_t p);
/// {x : x|D is a depth-D node of the tree}, D the largest node length.
/// Nodes are n-tuples whose coordinates share one length.
NdCodePtr tree_code(std::size_t arity, const std::set<BitTuple>& nodes);

/// Finite union of nowhere dense codes of one arity.
struct MeagerCode {
    std::vector<NdCodePtr> parts;

    explicit MeagerCode(std::vector<NdCodePtr> ps);
    std::size_t arity() const { return parts.front()->arity(); }
};

// JSON forms.
NullCode null_code_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NullCode& c);
NdCodePtr nd_code_from_json(const nlohmann::json& j);
Box box_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Box& b);
ClopenSet clopen_from_json(const nlohmann::json& j, std::size_t arity);
nlohmann::json to_json(const ClopenSet& s);

} // namespace mutgen

#endif
