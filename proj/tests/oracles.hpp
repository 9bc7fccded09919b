// Brute-force oracles and generators for the acceptance run.
#ifndef MUTGEN_TESTS_ORACLES_HPP
#define MUTGEN_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mutgen/cohen_poset.hpp"
#include "mutgen/fusion.hpp"
#include "mutgen/random_poset.hpp"
#include "mutgen/superperfect.hpp"
#include "mutgen/thma.hpp"

namespace oracle {

using namespace mutgen;

inline BitWord random_bits(std::mt19937_64& rng, std::size_t n)
{
    BitWord w;
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(static_cast<int>(rng() & 1));
    return w;
}

inline BitWord bits_of_int(std::uint64_t v, std::size_t n)
{
    BitWord w;
    for (std::size_t b = n; b-- > 0;)
        w.push_back(static_cast<int>((v >> b) & 1));
    return w;
}

inline NullCode random_null(std::mt19937_64& rng, std::size_t arity)
{
    std::map<std::size_t, NullCode::Level> levels;
    for (std::size_t m = 2; m < 10; ++m)
        if (rng() % 2) {
            BitTuple t;
            for (std::size_t c = 0; c < arity; ++c)
                t.push_back(random_bits(rng, m));
            levels[m].insert(t);
        }
    return NullCode(arity, 10, levels, Rational(2), Rational(1, 2));
}

// Builtin codes decided by their defining predicates.
inline bool escapes(const NowhereDenseCode& c, const BitTuple& x)
{
    const auto name = c.name();
    if (name.rfind("diag", 0) == 0) {
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[i].compatible(x[j]))
                    return false;
        return true;
    }
    if (name == "even-zeros") {
        for (std::size_t i = 0; i < x[0].size(); i += 2)
            if (x[0][i])
                return true;
        return false;
    }
    if (name.rfind("agree-tail", 0) == 0) {
        const std::size_t p = std::stoul(name.substr(name.find('(') + 1));
        for (std::size_t i = p; i < std::min(x[0].size(), x[1].size()); ++i)
            if (x[0][i] != x[1][i])
                return true;
        return false;
    }
    throw std::logic_error("no oracle for code " + name);
}

// Empty when every distinct-leaf tuple escapes every code.
inline std::string brute_check(const FinBinTree& tree, const FusionTask& task, std::size_t threshold)
{
    const auto leaves = tree.maximal_nodes();
    const auto depth = leaves.empty() ? 0 : leaves[0].size();
    std::string bad;
    for (const auto& c : task.nd_codes)
        for_each_distinct_tuple(leaves.size(), c->arity(), [&](const std::vector<std::size_t>& idx) {
            BitTuple x;
            for (auto i : idx)
                x.push_back(leaves[i]);
            if (!escapes(*c, x))
                bad = c->name();
            return bad.empty();
        });
    for (const auto& c : task.null_codes)
        for_each_distinct_tuple(leaves.size(), c.arity(), [&](const std::vector<std::size_t>& idx) {
            BitTuple x;
            for (auto i : idx)
                x.push_back(leaves[i]);
            for (const auto& [m, level] : c.levels())
                if (m >= std::max(threshold, separation_level(x)) && m <= depth && level.count(restrict_tuple(x, m)))
                    bad = "null hit at " + std::to_string(m);
            return bad.empty();
        });
    return bad;
}

inline bool brute_in_J(const NullCode& code, const Schedule& s, std::size_t j, std::size_t k, const BitTuple& x)
{
    const auto lo = s.d[2 * k + j];
    for (const auto& [i, level] : code.levels()) {
        if (i < s.d[2 * k + 1 + j] || i >= s.d[2 * k + 2 + j])
            continue;
        for (const auto& t : level) {
            bool agree = true;
            for (std::size_t q = 0; q < x.size(); ++q)
                for (std::size_t p = lo; p < i; ++p)
                    agree = agree && t[q][p] == x[q][p - lo];
            if (agree)
                return true;
        }
    }
    return false;
}

inline bool brute_in_K(const NullCode& code, const Schedule& s, std::size_t j, std::size_t k, const BitWord& w)
{
    const auto n = code.arity();
    const auto m = 2 * k + j;
    const auto la = s.l[m + 1], lb = s.l[m + 2];
    const auto mid = s.c[m + 1] - s.c[m];
    bool found = false;
    for_each_distinct_tuple(std::size_t(1) << m, n, [&](const std::vector<std::size_t>& ia) {
        for_each_distinct_tuple(std::size_t(1) << (m + 1), n, [&](const std::vector<std::size_t>& ib) {
            BitTuple x;
            for (std::size_t q = 0; q < n; ++q)
                x.push_back(w.slice(ia[q] * la, ia[q] * la + la) + w.slice(mid + ib[q] * lb, mid + ib[q] * lb + lb));
            found = brute_in_J(code, s, j, k, x);
            return !found;
        });
        return !found;
    });
    return found;
}

inline bool brute_tf(const GrowthFn& f, const NatWord& s)
{
    for (std::size_t i = 0; i <= s.size(); ++i) {
        std::uint64_t mx = 0;
        for (std::size_t j = 0; j < i; ++j)
            mx = std::max(mx, s[j]);
        if (f(mx) < i)
            return false;
    }
    return true;
}

inline bool pair_brute(const NatWord& st, const NatWord& tt, const NatWord& s, const NatWord& t)
{
    if (s.size() != t.size() || !is_prefix(st, s) || !is_prefix(tt, t))
        return false;
    std::uint64_t mx = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        mx = std::max({mx, s[i], t[i]});
    return s.size() == 0 ? st.size() == 0 : mx + st.size() >= s.size();
}

inline void for_each_word(std::size_t max_len, std::uint64_t bound, const std::function<void(const NatWord&)>& f)
{
    NatWord w;
    std::function<void()> rec = [&]() {
        f(w);
        if (w.size() == max_len)
            return;
        for (std::uint64_t v = 0; v < bound; ++v) {
            w.push_back(v);
            rec();
            w.pop_back();
        }
    };
    rec();
}

// Nodes of even length split into `width` random successors; the others
// continue with one.
inline FinNatTree random_superperfect(std::mt19937_64& rng, std::size_t depth, std::size_t width)
{
    std::set<NatWord> nodes{{}}, splits;
    std::function<void(const NatWord&)> grow = [&](const NatWord& u) {
        if (u.size() >= depth)
            return;
        if (u.size() % 2 == 0) {
            splits.insert(u);
            std::set<std::uint64_t> vals;
            while (vals.size() < width)
                vals.insert(rng() % (3 * depth));
            for (auto v : vals) {
                NatWord w = u;
                w.push_back(v);
                nodes.insert(w);
                grow(w);
            }
        } else {
            NatWord w = u;
            w.push_back(rng() % (3 * depth));
            nodes.insert(w);
            grow(w);
        }
    };
    grow({});
    return FinNatTree(nodes, splits, width);
}

inline CohenCondition random_cohen(std::mt19937_64& rng)
{
    const std::size_t n = rng() % 5;
    std::vector<BitWord> ws;
    const auto count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i)
        ws.push_back(random_bits(rng, n));
    return CohenCondition(prefix_close(ws), n);
}

inline CohenCondition cohen_extension(std::mt19937_64& rng, const CohenCondition& q)
{
    const std::size_t extra = rng() % 3;
    std::vector<BitWord> ws;
    for (const auto& l : q.leaves()) {
        const auto copies = 1 + rng() % 2;
        for (std::size_t i = 0; i < copies; ++i)
            ws.push_back(l + random_bits(rng, extra));
    }
    return CohenCondition(prefix_close(ws), q.height() + extra);
}

// Verdict of an m-tuple of leaves, read off the definition of a free set.
inline std::string classify(const FinBinTree& tree, const BitTuple& args, const BitWord& y)
{
    const auto K = tree.height();
    const auto head = y.prefix(std::min(y.size(), K));
    for (const auto& a : args)
        if (y.size() >= K && head == a)
            return "equals-argument";
    if (!tree.contains(head))
        return "freeness-witnessed";
    if (y.size() >= K)
        return "violation";
    return "undecided-at-depth";
}

constexpr std::size_t kR = 3;

inline ClopenSet product_of(const std::vector<BitWord>& leaves)
{
    return ClopenSet(leaves.size(), {Box(leaves.begin(), leaves.end())});
}

inline RandomCondition random_condition(std::mt19937_64& rng, std::size_t k, std::size_t n)
{
    n = std::min(n, std::size_t(1) << k);
    std::set<BitWord> ls;
    while (ls.size() < n)
        ls.insert(random_bits(rng, k));
    std::vector<BitWord> leaves(ls.begin(), ls.end());
    std::shuffle(leaves.begin(), leaves.end(), rng);
    ClopenSet b(n);
    const auto count = 1 + rng() % 3;
    for (std::size_t i = 0; i < count; ++i) {
        Box box;
        for (const auto& t : leaves)
            box.push_back(t + random_bits(rng, rng() % (kR - k + 1)));
        b.boxes.push_back(box);
    }
    return RandomCondition(k, prefix_close(leaves), leaves, b);
}

// Every coordinate set Gamma on which j is a bijection onto n^q, lifted:
// the points x with (x_gamma placed at j(gamma)) in B^q.
inline ClopenSet lifted(const ClopenSet& bq, const std::vector<std::size_t>& gamma, const std::vector<std::size_t>& j,
                 std::size_t np)
{
    ClopenSet out(np);
    for (const auto& box : bq.boxes) {
        Box b(np);
        for (auto g : gamma)
            b[g] = box[j[g]];
        out.boxes.push_back(b);
    }
    return out;
}

inline void for_each_gamma(std::size_t np, const std::vector<std::size_t>& j, std::size_t nq,
                    const std::function<void(const std::vector<std::size_t>&)>& f)
{
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << np); ++mask) {
        std::vector<std::size_t> gamma;
        std::set<std::size_t> image;
        for (std::size_t i = 0; i < np; ++i)
            if ((mask >> i) & 1) {
                gamma.push_back(i);
                image.insert(j[i]);
            }
        if (gamma.size() == nq && image.size() == nq)
            f(gamma);
    }
}

// p below q with the given extension of finite parts; nullopt when the
// largest admissible B is null.
inline std::optional<RandomCondition> extend(std::mt19937_64& rng, const RandomCondition& q)
{
    const auto k = q.k() + (rng() % 2);
    if (k > kR)
        return std::nullopt;
    std::vector<BitWord> leaves;
    std::vector<std::size_t> j;
    for (std::size_t i = 0; i < q.n(); ++i) {
        leaves.push_back(q.leaves()[i] + random_bits(rng, k - q.k()));
        j.push_back(i);
    }
    if (k > q.k() && q.n() < 3 && rng() % 2) {
        const auto i = rng() % q.n();
        BitWord other = leaves[i];
        other.set(k - 1, 1 - other[k - 1]);
        leaves.push_back(other);
        j.push_back(i);
    }
    ClopenSet b = product_of(leaves);
    for_each_gamma(leaves.size(), j, q.n(),
                   [&](const std::vector<std::size_t>& g) { b = intersect(b, lifted(q.b(), g, j, leaves.size())); });
    if (rng() % 2) {
        Box box;
        for (const auto& t : leaves)
            box.push_back(t + random_bits(rng, rng() % (kR - k + 1)));
        const auto shrunk = intersect(b, ClopenSet(leaves.size(), {box}));
        if (measure(shrunk) > Rational(0))
            b = shrunk;
    }
    if (measure(b) == Rational(0))
        return std::nullopt;
    std::set<BitWord> nodes = q.tree().nodes();
    for (const auto& l : leaves)
        for (std::size_t m = 0; m <= l.size(); ++m)
            nodes.insert(l.prefix(m));
    return RandomCondition(k, FinBinTree(nodes), leaves, b);
}

} // namespace oracle

#endif
