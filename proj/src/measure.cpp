#include "mutgen/measure.hpp"

#include <algorithm>
#include <set>

#include "mutgen/errors.hpp"

namespace mutgen {

namespace {

void check_arity(const ClopenSet& s, const Box& b)
{
    if (b.size() != s.arity)
        throw PreconditionError("box arity " + std::to_string(b.size()) + " does not match set arity " +
                                std::to_string(s.arity));
}

// Normalized boxes can be numerous; refuse expansions that would not fit.
constexpr std::size_t kMaxNormalizedBoxes = std::size_t(1) << 22;

} // namespace

Rational box_measure(const Box& b)
{
    std::int64_t total = 0;
    for (const auto& w : b)
        total += static_cast<std::int64_t>(w.size());
    return Rational::pow2(-total);
}

bool box_intersect(const Box& a, const Box& b, Box* out)
{
    Box r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_prefix_of(b[i]))
            r[i] = b[i];
        else if (b[i].is_prefix_of(a[i]))
            r[i] = a[i];
        else
            return false;
    }
    if (out)
        *out = std::move(r);
    return true;
}

bool box_disjoint(const Box& a, const Box& b) { return !box_intersect(a, b); }

bool box_within(const Box& a, const Box& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_prefix_of(a[i]))
            return false;
    return true;
}

std::vector<Box> box_difference(const Box& a, const Box& b)
{
    if (box_disjoint(a, b))
        return {a};
    std::vector<Box> out;
    Box cur = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t p = cur[i].size(); p < b[i].size(); ++p) {
            Box piece = cur;
            piece[i] = b[i].prefix(p).with(1 - b[i][p]);
            out.push_back(std::move(piece));
        }
        if (cur[i].size() < b[i].size())
            cur[i] = b[i];
    }
    return out;
}

ClopenSet::ClopenSet(std::size_t n, std::vector<Box> bs) : arity(n), boxes(std::move(bs))
{
    if (n == 0)
        throw PreconditionError("clopen set arity must be at least 1");
    for (const auto& b : boxes)
        check_arity(*this, b);
}

ClopenSet disjointify(const ClopenSet& s)
{
    ClopenSet out(s.arity);
    for (const auto& b : s.boxes) {
        check_arity(s, b);
        std::vector<Box> rest{b};
        for (const auto& d : out.boxes) {
            std::vector<Box> next;
            for (const auto& r : rest) {
                auto pieces = box_difference(r, d);
                next.insert(next.end(), pieces.begin(), pieces.end());
            }
            rest = std::move(next);
            if (rest.empty())
                break;
        }
        out.boxes.insert(out.boxes.end(), rest.begin(), rest.end());
    }
    return out;
}

Rational measure(const ClopenSet& s)
{
    Rational total;
    for (const auto& b : disjointify(s).boxes)
        total += box_measure(b);
    return total;
}

std::size_t resolution(const ClopenSet& s)
{
    std::size_t r = 0;
    for (const auto& b : s.boxes)
        for (const auto& w : b)
            r = std::max(r, w.size());
    return r;
}

ClopenSet normalize(const ClopenSet& s, std::size_t min_resolution)
{
    const std::size_t res = std::max(resolution(s), min_resolution);
    std::set<Box> expanded;
    for (const auto& b : disjointify(s).boxes) {
        std::size_t free_bits = 0;
        for (const auto& w : b)
            free_bits += res - w.size();
        if (free_bits >= 63 || expanded.size() + (std::size_t(1) << free_bits) > kMaxNormalizedBoxes)
            throw PreconditionError("normalization at resolution " + std::to_string(res) + " is too large");
        std::vector<Box> layer{b};
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::vector<Box> next;
            for (const auto& cur : layer) {
                const std::size_t extra = res - cur[i].size();
                for (std::uint64_t v = 0; v < (std::uint64_t(1) << extra); ++v) {
                    Box x = cur;
                    for (std::size_t p = extra; p-- > 0;)
                        x[i].push_back(static_cast<int>((v >> p) & 1));
                    next.push_back(std::move(x));
                }
            }
            layer = std::move(next);
        }
        expanded.insert(layer.begin(), layer.end());
    }
    return ClopenSet(s.arity, std::vector<Box>(expanded.begin(), expanded.end()));
}

ClopenSet intersect(const ClopenSet& a, const ClopenSet& b)
{
    ClopenSet out(a.arity);
    for (const auto& x : a.boxes)
        for (const auto& y : b.boxes) {
            Box r;
            if (box_intersect(x, y, &r))
                out.boxes.push_back(std::move(r));
        }
    return out;
}

ClopenSet unite(const ClopenSet& a, const ClopenSet& b)
{
    ClopenSet out = a;
    out.boxes.insert(out.boxes.end(), b.boxes.begin(), b.boxes.end());
    return out;
}

ClopenSet difference(const ClopenSet& a, const ClopenSet& b)
{
    std::vector<Box> rest = a.boxes;
    for (const auto& d : b.boxes) {
        std::vector<Box> next;
        for (const auto& r : rest) {
            auto pieces = box_difference(r, d);
            next.insert(next.end(), pieces.begin(), pieces.end());
        }
        rest = std::move(next);
    }
    return ClopenSet(a.arity, std::move(rest));
}

bool is_empty(const ClopenSet& s) { return s.boxes.empty(); }

bool is_subset(const ClopenSet& a, const ClopenSet& b)
{
    // Nonempty clopen sets have positive measure.
    return measure(intersect(a, b)) == measure(a);
}

ClopenSet project(const ClopenSet& s, const std::vector<std::size_t>& perm)
{
    ClopenSet out(perm.size());
    for (const auto& b : s.boxes) {
        Box p;
        for (auto i : perm) {
            if (i >= s.arity)
                throw PreconditionError("projection index out of range");
            p.push_back(b[i]);
        }
        out.boxes.push_back(std::move(p));
    }
    return out;
}

std::vector<Cube> cube_difference(const Cube& a, const Cube& b)
{
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] >= 0 && b[p] >= 0 && a[p] != b[p])
            return {a};
    std::vector<Cube> out;
    Cube cur = a;
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (b[p] >= 0 && cur[p] < 0) {
            Cube piece = cur;
            piece[p] = static_cast<std::int8_t>(1 - b[p]);
            out.push_back(std::move(piece));
            cur[p] = b[p];
        }
    }
    return out;
}

void CubeUnion::add(const Cube& c)
{
    if (c.size() != width_)
        throw PreconditionError("cube width mismatch");
    std::vector<Cube> rest{c};
    for (const auto& d : pieces_) {
        std::vector<Cube> next;
        for (const auto& r : rest) {
            auto ps = cube_difference(r, d);
            next.insert(next.end(), ps.begin(), ps.end());
        }
        rest = std::move(next);
        if (rest.empty())
            return;
    }
    pieces_.insert(pieces_.end(), rest.begin(), rest.end());
}

BigInt CubeUnion::count() const
{
    BigInt total = 0;
    for (const auto& c : pieces_) {
        std::size_t free_bits = 0;
        for (auto v : c)
            free_bits += v < 0;
        total += BigInt(1) << free_bits;
    }
    return total;
}

bool CubeUnion::contains(const std::vector<int>& point) const
{
    for (const auto& c : pieces_) {
        bool ok = true;
        for (std::size_t p = 0; p < width_ && ok; ++p)
            ok = c[p] < 0 || c[p] == point[p];
        if (ok)
            return true;
    }
    return false;
}

} // namespace mutgen
