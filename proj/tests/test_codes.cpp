#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mutgen/codes.hpp"
#include "mutgen/errors.hpp"

using namespace mutgen;
using nlohmann::json;

namespace {

BitWord W(const char* s) { return BitWord::parse(s); }

BitWord random_bits(std::mt19937_64& rng, std::size_t n)
{
    BitWord w;
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(static_cast<int>(rng() & 1));
    return w;
}

NullCode single_level()
{
    return NullCode(1, 4, {{3, {{W("010")}}}}, Rational(1), Rational(1, 2));
}

bool pairwise_incomparable(const Box& b)
{
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (b[i].compatible(b[j]))
                return false;
    return true;
}

bool escapes_even_zeros(const BitWord& w)
{
    for (std::size_t i = 0; i < w.size(); i += 2)
        if (w[i] == 1)
            return true;
    return false;
}

bool escapes_agree_tail(const Box& b, std::size_t p)
{
    const auto n = std::min(b[0].size(), b[1].size());
    for (std::size_t i = p; i < n; ++i)
        if (b[0][i] != b[1][i])
            return true;
    return false;
}

Rational brute_tail(const NullCode& c, std::size_t k)
{
    Rational s;
    for (const auto& [m, level] : c.levels())
        if (m >= k)
            s += Rational(static_cast<std::int64_t>(level.size())) /
                 Rational::pow2(static_cast<std::int64_t>(m * c.arity()));
    return s;
}

} // namespace

TEST_CASE("null_tail examples")
{
    const NullCode empty(1, 5, {}, Rational(0), Rational(1, 2));
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(null_tail(empty, k) == Rational(0));
    CHECK(null_tail(single_level(), 0) == Rational(1, 8));
    CHECK(null_tail(single_level(), 3) == Rational(1, 8));
    CHECK(null_tail(single_level(), 4) == Rational(0));
}

TEST_CASE("null_hits examples")
{
    const NullCode empty(1, 5, {}, Rational(0), Rational(1, 2));
    CHECK(null_hits(empty, {W("0101")}, 0, 4).empty());
    CHECK(null_hits(single_level(), {W("0101")}, 0, 4) == std::vector<std::size_t>{3});
    CHECK(null_hits(single_level(), {W("1101")}, 0, 4).empty());
}

TEST_CASE("null code construction rejects bad input")
{
    CHECK_THROWS_AS(NullCode(1, 3, {{3, {{W("010")}}}}, Rational(1), Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(NullCode(1, 4, {{3, {{W("01")}}}}, Rational(1), Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(NullCode(1, 4, {{3, {{W("010")}}}}, Rational(1), Rational(1)), PreconditionError);
    // declared bound 1/16 * (1/2)^k is below the stored mass 1/8
    CHECK_THROWS_AS(NullCode(1, 4, {{3, {{W("010")}}}}, Rational(1, 16), Rational(1, 2)), PreconditionError);
}

TEST_CASE("null tails of random codes sit between stored mass and the declared bound")
{
    std::mt19937_64 rng(7);
    for (int it = 0; it < 100; ++it) {
        const std::size_t arity = 1 + rng() % 2;
        const std::size_t horizon = 2 + rng() % 6;
        std::map<std::size_t, NullCode::Level> levels;
        for (std::size_t m = 1; m < horizon; ++m)
            if (rng() % 2) {
                BitTuple t;
                for (std::size_t c = 0; c < arity; ++c)
                    t.push_back(random_bits(rng, m));
                levels[m].insert(t);
            }
        const NullCode c(arity, horizon, levels, Rational(2), Rational(1, 2));
        for (std::size_t k = 0; k <= horizon; ++k) {
            CHECK(brute_tail(c, k) <= null_tail(c, k));
            CHECK(null_tail(c, k) <= declared_tail(c, k));
            if (k > 0)
                CHECK(null_tail(c, k) <= null_tail(c, k - 1));
        }
    }
}

TEST_CASE("null code JSON roundtrip")
{
    const auto c = single_level();
    const auto back = null_code_from_json(to_json(c));
    CHECK(back.levels() == c.levels());
    CHECK(back.horizon() == c.horizon());
    CHECK(back.tail_a() == c.tail_a());
    CHECK(back.tail_rho() == c.tail_rho());
    CHECK_THROWS_AS(null_code_from_json(json::parse(R"({"arity":1})")), UsageError);
}

TEST_CASE("diag avoid examples")
{
    const auto d2 = diag_code(2);
    CHECK(avoid(*d2, {W("0"), W("0")}) == Box{W("00"), W("01")});
    CHECK(avoid(*d2, {W("0"), W("1")}) == Box{W("0"), W("1")});
    CHECK(pairwise_incomparable(avoid(*diag_code(3), {W("-"), W("-"), W("-")})));
}

TEST_CASE("even-zeros avoid examples")
{
    const auto e = even_zeros_code();
    CHECK(avoid(*e, {W("1")}) == Box{W("1")});
    CHECK(avoid(*e, {W("0")}) == Box{W("001")});
}

TEST_CASE("avoid outputs extend and escape, and are fixed points")
{
    std::mt19937_64 rng(13);
    const auto d3 = diag_code(3);
    const auto e = even_zeros_code();
    const auto a = agree_tail_code(2);
    for (int it = 0; it < 500; ++it) {
        Box b3{random_bits(rng, rng() % 4), random_bits(rng, rng() % 4), random_bits(rng, rng() % 4)};
        const auto o3 = avoid(*d3, b3);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(b3[i].is_prefix_of(o3[i]));
        CHECK(pairwise_incomparable(o3));
        CHECK(avoid(*d3, o3) == o3);

        Box b1{random_bits(rng, rng() % 6)};
        const auto o1 = avoid(*e, b1);
        CHECK(b1[0].is_prefix_of(o1[0]));
        CHECK(escapes_even_zeros(o1[0]));
        CHECK(avoid(*e, o1) == o1);

        Box b2{random_bits(rng, rng() % 5), random_bits(rng, rng() % 5)};
        const auto o2 = avoid(*a, b2);
        CHECK(b2[0].is_prefix_of(o2[0]));
        CHECK(b2[1].is_prefix_of(o2[1]));
        CHECK(escapes_agree_tail(o2, 2));
        CHECK(avoid(*a, o2) == o2);
    }
}

TEST_CASE("tree codes")
{
    const auto t = tree_code(1, {{W("00")}, {W("11")}});
    const auto o = avoid(*t, {W("0")});
    CHECK(W("0").is_prefix_of(o[0]));
    CHECK(o[0].size() >= 2);
    CHECK(o[0].prefix(2) == W("01"));
    CHECK(avoid(*t, {W("10")}) == Box{W("10")});
    // every extension of 0 lies in the set
    const auto full = tree_code(1, {{W("00")}, {W("01")}});
    CHECK_THROWS(avoid(*full, {W("0")}));
}

TEST_CASE("nowhere dense code JSON")
{
    const auto d = nd_code_from_json(json::parse(R"({"kind":"builtin","name":"diag","params":{"m":2}})"));
    CHECK(d->arity() == 2);
    CHECK(nd_code_from_json(d->to_json())->name() == d->name());
    CHECK_THROWS_AS(nd_code_from_json(json::parse(R"({"kind":"builtin","name":"tf","params":{}})")), UsageError);
    CHECK_THROWS_AS(nd_code_from_json(json::parse(R"({"kind":"builtin","name":"nope"})")), UsageError);
}
