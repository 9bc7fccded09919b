#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mutgen/measure.hpp"

using namespace mutgen;

namespace {

BitWord W(const char* s) { return BitWord::parse(s); }

BitWord random_bits(std::mt19937_64& rng, std::size_t n)
{
    BitWord w;
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(static_cast<int>(rng() & 1));
    return w;
}

ClopenSet random_set(std::mt19937_64& rng, std::size_t arity, std::size_t max_len)
{
    ClopenSet s(arity);
    const auto count = rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
        Box b;
        for (std::size_t c = 0; c < arity; ++c)
            b.push_back(random_bits(rng, rng() % (max_len + 1)));
        s.boxes.push_back(b);
    }
    return s;
}

// Points of ({0,1}^R)^n, each coordinate packed into R bits.
bool point_in(const ClopenSet& s, std::uint64_t p, std::size_t R)
{
    for (const auto& b : s.boxes) {
        bool in = true;
        for (std::size_t c = 0; c < s.arity && in; ++c) {
            const auto x = (p >> (c * R)) & ((std::uint64_t(1) << R) - 1);
            for (std::size_t i = 0; i < b[c].size() && in; ++i)
                in = static_cast<int>((x >> (R - 1 - i)) & 1) == b[c][i];
        }
        if (in)
            return true;
    }
    return false;
}

Rational brute_measure(const ClopenSet& s, std::size_t R)
{
    std::uint64_t hits = 0;
    const auto total = std::uint64_t(1) << (R * s.arity);
    for (std::uint64_t p = 0; p < total; ++p)
        hits += point_in(s, p, R);
    return Rational(hits) / Rational(total);
}

} // namespace

TEST_CASE("measure examples")
{
    CHECK(measure(ClopenSet(1, {{W("011")}})) == Rational(1, 8));
    CHECK(measure(ClopenSet(2, {{W("0"), W("11")}})) == Rational(1, 8));
    CHECK(measure(ClopenSet(1, {{W("0")}, {W("01")}})) == Rational(1, 2));
    CHECK(measure(ClopenSet(1)) == Rational(0));
}

TEST_CASE("normalize examples")
{
    const auto n = normalize(ClopenSet(1, {{W("0")}, {W("01")}}));
    CHECK(n.boxes == std::vector<Box>{{W("00")}, {W("01")}});
    CHECK(normalize(ClopenSet(1)).boxes.empty());
    CHECK(normalize(ClopenSet(1, {{W("-")}}), 1).boxes == std::vector<Box>{{W("0")}, {W("1")}});
}

TEST_CASE("measure agrees with point counting")
{
    std::mt19937_64 rng(17);
    for (int it = 0; it < 300; ++it) {
        const std::size_t arity = 1 + rng() % 2;
        const auto s = random_set(rng, arity, 4);
        const auto m = measure(s);
        CHECK(m == brute_measure(s, 4));
        CHECK(measure(normalize(s)) == m);
        CHECK(measure(disjointify(s)) == m);
    }
}

TEST_CASE("normalize yields disjoint boxes at one resolution")
{
    std::mt19937_64 rng(23);
    for (int it = 0; it < 200; ++it) {
        const auto s = random_set(rng, 2, 3);
        const auto n = normalize(s);
        for (std::size_t i = 0; i < n.boxes.size(); ++i) {
            for (const auto& w : n.boxes[i])
                CHECK(w.size() == n.boxes[0][0].size());
            for (std::size_t j = i + 1; j < n.boxes.size(); ++j)
                CHECK(box_disjoint(n.boxes[i], n.boxes[j]));
        }
    }
}

TEST_CASE("set algebra against point counting")
{
    std::mt19937_64 rng(29);
    for (int it = 0; it < 200; ++it) {
        const auto a = random_set(rng, 2, 3);
        const auto b = random_set(rng, 2, 3);
        const auto i = intersect(a, b), u = unite(a, b), d = difference(a, b);
        for (std::uint64_t p = 0; p < 64; ++p) {
            const bool pa = point_in(a, p, 3), pb = point_in(b, p, 3);
            CHECK(point_in(i, p, 3) == (pa && pb));
            CHECK(point_in(u, p, 3) == (pa || pb));
            CHECK(point_in(d, p, 3) == (pa && !pb));
        }
        CHECK(measure(a) <= measure(u));
        CHECK(measure(u) <= measure(a) + measure(b));
        CHECK(is_subset(i, a));
        CHECK(is_subset(a, u));
        CHECK(is_empty(intersect(d, b)));
    }
}

TEST_CASE("box difference is a disjoint cover")
{
    std::mt19937_64 rng(31);
    for (int it = 0; it < 300; ++it) {
        Box a{random_bits(rng, rng() % 3), random_bits(rng, rng() % 3)};
        Box b{random_bits(rng, rng() % 4), random_bits(rng, rng() % 4)};
        const auto pieces = box_difference(a, b);
        ClopenSet ps(2, pieces), sa(2, {a}), sb(2, {b});
        for (std::size_t i = 0; i < pieces.size(); ++i)
            for (std::size_t j = i + 1; j < pieces.size(); ++j)
                CHECK(box_disjoint(pieces[i], pieces[j]));
        for (std::uint64_t p = 0; p < 256; ++p)
            CHECK(point_in(ps, p, 4) == (point_in(sa, p, 4) && !point_in(sb, p, 4)));
    }
}

TEST_CASE("projection")
{
    const ClopenSet b(2, {{W("0"), W("1")}, {W("1"), W("0")}});
    CHECK(measure(project(b, {0})) == Rational(1));
    std::mt19937_64 rng(37);
    for (int it = 0; it < 200; ++it) {
        const auto s = random_set(rng, 2, 3);
        CHECK(measure(project(s, {1})) >= measure(s));
        CHECK(measure(project(s, {1, 0})) == measure(s));
    }
}

TEST_CASE("cube unions count exactly")
{
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        const std::size_t width = 1 + rng() % 8;
        CubeUnion u(width);
        std::vector<Cube> cubes;
        for (int c = 0; c < 4; ++c) {
            Cube cube(width);
            for (auto& x : cube)
                x = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
            cubes.push_back(cube);
            u.add(cube);
        }
        std::uint64_t brute = 0;
        for (std::uint64_t p = 0; p < (std::uint64_t(1) << width); ++p) {
            std::vector<int> point(width);
            for (std::size_t i = 0; i < width; ++i)
                point[i] = static_cast<int>((p >> i) & 1);
            bool in = false;
            for (const auto& cube : cubes) {
                bool ok = true;
                for (std::size_t i = 0; i < width && ok; ++i)
                    ok = cube[i] < 0 || cube[i] == point[i];
                in = in || ok;
            }
            brute += in;
            CHECK(u.contains(point) == in);
        }
        CHECK(u.count() == BigInt(brute));
    }
}
