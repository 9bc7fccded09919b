#ifndef MUTGEN_MEASURE_HPP
#define MUTGEN_MEASURE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mutgen/rational.hpp"
#include "mutgen/words.hpp"

namespace mutgen {

/// Cylinder [s_0] x ... x [s_{n-1}] in (2^omega)^n.
using Box = std::vector<BitWord>;

/// Product measure of a single box: 2^-(sum of coordinate lengths).
Rational box_measure(const Box& b);
/// Coordinatewise intersection; false when some pair of coordinates is
/// incomparable.
bool box_intersect(const Box& a, const Box& b, Box* out = nullptr);
bool box_disjoint(const Box& a, const Box& b);
/// a is contained in b (every coordinate of a extends the one of b).
bool box_within(const Box& a, const Box& b);
/// a minus b as pairwise disjoint boxes.
std::vector<Box> box_difference(const Box& a, const Box& b);

/// Finite union of boxes of a fixed arity.
struct ClopenSet {
    std::size_t arity = 1;
    std::vector<Box> boxes;

    ClopenSet() = default;
    explicit ClopenSet(std::size_t n) : arity(n) {}
    ClopenSet(std::size_t n, std::vector<Box> bs);

    bool empty_list() const { return boxes.empty(); }
};

/// Pairwise disjoint boxes covering the same set (no resolution change).
ClopenSet disjointify(const ClopenSet& s);
Rational measure(const ClopenSet& s);
/// Pairwise disjoint boxes whose coordinates all have one common length,
/// at least `min_resolution`. The empty set stays empty.
ClopenSet normalize(const ClopenSet& s, std::size_t min_resolution = 0);
/// Longest coordinate over all boxes.
std::size_t resolution(const ClopenSet& s);
ClopenSet intersect(const ClopenSet& a, const ClopenSet& b);
ClopenSet unite(const ClopenSet& a, const ClopenSet& b);
ClopenSet difference(const ClopenSet& a, const ClopenSet& b);
bool is_subset(const ClopenSet& a, const ClopenSet& b);
bool is_empty(const ClopenSet& s);
/// Image under (x_0..x_{n-1}) -> (x_{perm[0]}..x_{perm[k-1]}).
ClopenSet project(const ClopenSet& s, const std::vector<std::size_t>& perm);

/// Pattern over a fixed number of bit positions: 0, 1, or free (-1).
using Cube = std::vector<std::int8_t>;

/// Union of cubes over `width` positions, kept as disjoint pieces so the
/// number of covered points can be read off exactly.
class CubeUnion {
public:
    explicit CubeUnion(std::size_t width) : width_(width) {}

    std::size_t width() const { return width_; }
    void add(const Cube& c);
    /// Number of points of {0,1}^width covered.
    BigInt count() const;
    const std::vector<Cube>& pieces() const { return pieces_; }
    bool contains(const std::vector<int>& point) const;

private:
    std::size_t width_;
    std::vector<Cube> pieces_;
};

/// Pieces of a minus b, pairwise disjoint.
std::vector<Cube> cube_difference(const Cube& a, const Cube& b);

} // namespace mutgen

#endif
