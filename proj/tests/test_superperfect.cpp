#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "mutgen/errors.hpp"
#include "mutgen/superperfect.hpp"

using namespace mutgen;

namespace {

NatWord N(const char* s) { return parse_nat_word(s); }

// Defining formula, max over the empty set read as 0.
bool brute_tf(const GrowthFn& f, const NatWord& s)
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

// Root split into 0..9, each <m> continues to the split node <m,m>.
FinNatTree toy_tree()
{
    std::set<NatWord> nodes{{}}, splits{{}};
    for (std::uint64_t m = 0; m < 10; ++m) {
        nodes.insert({m});
        nodes.insert({m, m});
        splits.insert({m, m});
        for (std::uint64_t i = 0; i < 3; ++i)
            nodes.insert({m, m, i});
    }
    return FinNatTree(nodes, splits, 3);
}

FinNatTree random_superperfect(std::mt19937_64& rng, std::size_t depth, std::size_t width)
{
    std::set<NatWord> nodes{{}}, splits;
    std::function<void(const NatWord&)> grow = [&](const NatWord& u) {
        if (u.size() >= depth)
            return;
        if (rng() % 2 == 0 || u.empty()) {
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

bool pair_brute(const NatWord& st, const NatWord& tt, const NatWord& s, const NatWord& t)
{
    if (s.size() != t.size() || !is_prefix(st, s) || !is_prefix(tt, t))
        return false;
    std::uint64_t mx = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        mx = std::max({mx, s[i], t[i]});
    return s.size() == 0 ? st.size() == 0 : mx + st.size() >= s.size();
}

void for_each_word(std::size_t max_len, std::uint64_t bound, const std::function<void(const NatWord&)>& f)
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

} // namespace

TEST_CASE("growth functions")
{
    const auto f = GrowthFn::parse("k+6");
    CHECK(f(0) == 6);
    CHECK(f(4) == 10);
    CHECK_THROWS_AS(GrowthFn::parse("k+"), UsageError);
}

TEST_CASE("tf_member examples")
{
    const auto f = GrowthFn::parse("k+1");
    CHECK(tf_member(f, N("0")));
    CHECK_FALSE(tf_member(f, N("0,0")));
    CHECK(tf_member(f, N("-")));
}

TEST_CASE("tf_member against the defining formula")
{
    for (const char* e : {"k+1", "k+2", "2k+1", "k^2+1"}) {
        const auto f = GrowthFn::parse(e);
        for_each_word(5, 5, [&](const NatWord& s) { CHECK(tf_member(f, s) == brute_tf(f, s)); });
    }
}

TEST_CASE("leaving T_f is permanent")
{
    const auto f = GrowthFn::parse("k+1");
    for_each_word(4, 4, [&](const NatWord& s) {
        if (!tf_member(f, s))
            for (std::uint64_t v = 0; v < 4; ++v) {
                NatWord w = s;
                w.push_back(v);
                CHECK_FALSE(tf_member(f, w));
            }
    });
}

TEST_CASE("tf_nd_witness")
{
    const auto f = GrowthFn::parse("k+1");
    CHECK(tf_nd_witness(f, N("3")) == N("3,0,0,0,0"));
    const auto g = GrowthFn::parse("k+4");
    CHECK(tf_nd_witness(g, N("-")) == NatWord(5, 0));
    for (const char* e : {"k+1", "k+3", "2k+1"}) {
        const auto h = GrowthFn::parse(e);
        for_each_word(4, 5, [&](const NatWord& s) {
            if (!tf_member(h, s))
                return;
            const auto w = tf_nd_witness(h, s);
            CHECK(is_prefix(s, w));
            CHECK_FALSE(tf_member(h, w));
        });
    }
}

TEST_CASE("g_sigma and g_T on the toy tree")
{
    const auto t = toy_tree();
    const auto v = view_of(t);
    for (std::uint64_t n = 0; n <= 9; ++n) {
        CHECK(g_sigma(v, {}, n) == 2);
        CHECK(g_T(t, n) == 3);
    }
    CHECK_THROWS_AS(g_sigma(v, {}, 10), NoWitness);
}

TEST_CASE("g_sigma is nondecreasing and g_T dominates it")
{
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        const auto t = random_superperfect(rng, 6, 3);
        const auto v = view_of(t);
        for (const auto& s : t.split_marks()) {
            std::size_t prev = 0;
            for (std::uint64_t n = 0; n < 20; ++n) {
                std::size_t g = 0;
                try {
                    g = g_sigma(v, s, n);
                } catch (const NoWitness&) {
                    break;
                }
                CHECK(g >= prev);
                CHECK(g_T(t, n) > g);
                prev = g;
            }
        }
    }
}

TEST_CASE("common_branch on the full 10-ary tree")
{
    const auto f = GrowthFn::parse("k+6");
    const auto v = full_nat_tree(10, 40);
    std::vector<BranchStep> trace;
    const auto s = common_branch(f, v, 14, &trace);
    CHECK(s == N("1,1,1,1,1,1,2,3,4,5,6,7,8,9"));
    for (std::size_t i = 0; i <= s.size(); ++i) {
        CHECK(v.contains(nat_prefix(s, i)));
        CHECK(tf_member(f, nat_prefix(s, i)));
    }
    for (const auto& step : trace) {
        CHECK(tf_member(f, step.sigma));
        CHECK(step.g < step.f_m);
    }
    // the successors stop at 9
    CHECK_THROWS_AS(common_branch(f, v, 15), DominationFailure);
}

TEST_CASE("common_branch needs domination")
{
    CHECK_THROWS_AS(common_branch(GrowthFn::parse("1"), full_nat_tree(10, 10), 5), UsageError);
}

TEST_CASE("pair_member examples")
{
    CHECK(pair_member({}, {}, N("0,5"), N("1,0")));
    CHECK_FALSE(pair_member({}, {}, N("0,0"), N("1,0")));
    CHECK_FALSE(pair_member({}, {}, N("0,5"), N("1")));
    CHECK(pair_member({}, {}, N("1,3"), N("2,0")));
}

TEST_CASE("pair_member against the definition")
{
    const std::vector<NatWord> stems{{}, N("1"), N("0,2")};
    for (const auto& st : stems)
        for (const auto& tt : stems) {
            if (st.size() != tt.size())
                continue;
            for_each_word(3, 4, [&](const NatWord& s) {
                for_each_word(3, 4, [&](const NatWord& t) {
                    if (s.size() == t.size())
                        CHECK(pair_member(st, tt, s, t) == pair_brute(st, tt, s, t));
                });
            });
        }
}

TEST_CASE("find_pair on the full 10-ary tree")
{
    const auto r = find_pair(full_nat_tree(10, 12), 6);
    CHECK(std::find(r.sigmas.begin(), r.sigmas.end(), N("1")) != r.sigmas.end());
    CHECK(std::find(r.taus.begin(), r.taus.end(), N("2,0")) != r.taus.end());
    CHECK(std::find(r.sigmas.begin(), r.sigmas.end(), N("1,3,0")) != r.sigmas.end());
    CHECK(r.sigma != r.tau);
    for (const auto& c : r.checkpoints)
        CHECK(c.holds);
    CHECK_THROWS_AS(find_pair(full_nat_tree(3, 4), 6), InsufficientDepth);
}

TEST_CASE("find_pair on random superperfect approximations")
{
    std::mt19937_64 rng(19);
    for (int it = 0; it < 100; ++it) {
        const auto t = random_superperfect(rng, 10, 3);
        const auto v = view_of(t);
        PairResult r;
        try {
            r = find_pair(v, 4);
        } catch (const InsufficientDepth&) {
            continue;
        }
        CHECK(r.sigma != r.tau);
        CHECK(r.sigma.size() >= 4);
        CHECK(r.tau.size() >= 4);
        CHECK(t.contains(r.sigma));
        CHECK(t.contains(r.tau));
        for (const auto& c : r.checkpoints) {
            CHECK(c.holds);
            CHECK(c.holds == pair_brute(r.sigmas[0], r.taus[0], c.sigma, c.tau));
        }
    }
}

TEST_CASE("avoid_meager_superperfect")
{
    const auto plain = avoid_meager_superperfect({}, 3, 3);
    CHECK(plain.tree.nodes().size() == 1 + 3 + 9 + 27);
    CHECK(plain.tree.split_marks().size() == 1 + 3 + 9);

    const auto f = GrowthFn::parse("k+2");
    const auto r = avoid_meager_superperfect({tf_code(f)}, 6, 3);
    for (const auto& leaf : r.tree.maximal_nodes()) {
        CHECK_FALSE(tf_member(f, leaf));
        bool committed = false;
        for (const auto& c : r.commitments)
            committed = committed || is_prefix(c.output, leaf);
        CHECK(committed);
    }
    for (const auto& s : r.tree.split_marks())
        CHECK(r.tree.successors(s).size() >= 3);
}

TEST_CASE("Baire-space code JSON")
{
    const auto c = nat_code_from_json(nlohmann::json::parse(R"({"name":"tf","params":{"f":"k+1"}})"));
    CHECK(c->arity() == 1);
    const auto p = nat_code_from_json(nlohmann::json::parse(R"({"name":"pair","params":{}})"));
    CHECK(p->arity() == 2);
    CHECK_THROWS_AS(nat_code_from_json(nlohmann::json::parse(R"({"name":"x","params":{}})")), UsageError);
}
