#include "mutgen/thma.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <random>

#include "mutgen/errors.hpp"
#include "mutgen/fusion.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

using U128 = unsigned __int128;
constexpr std::uint64_t kLimit = std::uint64_t(1) << 62;

std::uint64_t checked(U128 v)
{
    if (v > kLimit)
        throw PreconditionError("value exceeds 2^62");
    return static_cast<std::uint64_t>(v);
}

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    DFunction parse()
    {
        auto f = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw UsageError("bad d expression '" + std::string(s_) + "': " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    static bool is_var(char c) { return c == 'n' || c == 'k' || c == 'x'; }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    DFunction expr()
    {
        auto f = term();
        for (;;) {
            char op = peek();
            if (op != '+' && op != '-')
                return f;
            ++pos_;
            auto g = term();
            if (op == '+')
                f = [f, g](std::uint64_t n) { return checked(U128(f(n)) + g(n)); };
            else
                f = [f, g](std::uint64_t n) {
                    auto a = f(n), b = g(n);
                    if (b > a)
                        throw NotIncreasing("d expression went negative");
                    return a - b;
                };
        }
    }

    DFunction term()
    {
        auto f = power();
        for (;;) {
            char c = peek();
            if (c == '*')
                ++pos_;
            else if (!(is_var(c) || c == '(' || std::isdigit(static_cast<unsigned char>(c))))
                return f;
            auto g = power();
            f = [f, g](std::uint64_t n) { return checked(U128(f(n)) * g(n)); };
        }
    }

    DFunction power()
    {
        auto f = atom();
        if (peek() == '^') {
            ++pos_;
            auto g = power();
            f = [f, g](std::uint64_t n) {
                U128 r = 1;
                const auto base = f(n), e = g(n);
                for (std::uint64_t i = 0; i < e; ++i)
                    r = checked(r * base);
                return static_cast<std::uint64_t>(r);
            };
        }
        return f;
    }

    DFunction atom()
    {
        char c = peek();
        if (is_var(c)) {
            ++pos_;
            return [](std::uint64_t n) { return n; };
        }
        if (c == '(') {
            ++pos_;
            auto f = expr();
            if (peek() != ')')
                fail("missing ')'");
            ++pos_;
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            U128 v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = checked(v * 10 + U128(s_[pos_++] - '0'));
            const auto value = static_cast<std::uint64_t>(v);
            return [value](std::uint64_t) { return value; };
        }
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<BitWord> words_of_length(std::size_t n)
{
    std::vector<BitWord> out;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
        BitWord w;
        for (std::size_t b = n; b-- > 0;)
            w.push_back(static_cast<int>((v >> b) & 1));
        out.push_back(std::move(w));
    }
    return out;
}

void need_index(const Schedule& s, std::size_t i)
{
    if (i > s.N)
        throw PreconditionError("schedule has no index " + std::to_string(i) + " (N = " + std::to_string(s.N) + ")");
}

std::vector<int> bits_of(const BitWord& w)
{
    std::vector<int> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = w[i];
    return out;
}

} // namespace

DFunction parse_d_expression(std::string_view text) { return ExprParser(text).parse(); }

Schedule build_schedule(const DFunction& d, std::size_t N)
{
    Schedule s;
    s.N = N;
    s.d.assign(N + 1, 0);
    s.l.assign(N + 1, 0);
    s.c.assign(N + 1, 0);
    for (std::size_t i = 1; i <= N; ++i) {
        const auto v = d(s.d[i - 1]);
        if (v <= s.d[i - 1])
            throw NotIncreasing("d(" + std::to_string(s.d[i - 1]) + ") = " + std::to_string(v) +
                                " is not larger than its argument");
        s.d[i] = v;
        s.l[i] = v - s.d[i - 1];
        if (i - 1 >= 62)
            throw PreconditionError("schedule too long");
        s.c[i] = checked(U128(s.c[i - 1]) + (U128(1) << (i - 1)) * s.l[i]);
    }
    return s;
}

std::uint64_t bits_needed(const Schedule& sched, std::size_t levels)
{
    need_index(sched, levels + 1);
    return sched.c[levels + 1];
}

SigmaSystem build_sigma(const BitWord& r, const Schedule& sched, std::size_t levels)
{
    need_index(sched, levels + 1);
    if (r.size() < sched.c[levels + 1])
        throw InsufficientBits("r has " + std::to_string(r.size()) + " bits but level " + std::to_string(levels) +
                               " needs " + std::to_string(sched.c[levels + 1]));
    SigmaSystem sys;
    sys.levels = levels;
    sys.sigma[BitWord()] = r.prefix(sched.d[1]);
    for (std::size_t n = 0; n < levels; ++n) {
        const auto seg = sched.l[n + 2];
        const auto words = words_of_length(n);
        for (std::size_t k = 0; k < words.size(); ++k)
            for (int b : {0, 1}) {
                const auto lo = sched.c[n + 1] + (2 * k + b) * seg;
                sys.sigma[words[k].with(b)] = sys.sigma.at(words[k]) + r.slice(lo, lo + seg);
            }
    }
    return sys;
}

BitWord random_word(std::uint64_t seed, std::size_t length)
{
    std::mt19937_64 rng(seed);
    BitWord w;
    std::uint64_t buf = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 64 == 0)
            buf = rng();
        w.push_back(static_cast<int>((buf >> (i % 64)) & 1));
    }
    return w;
}

ClosedTree close_tree(const SigmaSystem& sys, const Schedule& sched)
{
    for (const auto& [s, sigma] : sys.sigma)
        if (s.size() < sys.levels && sys.sigma.at(s.with(0)) == sys.sigma.at(s.with(1)))
            throw DegenerateTree("sigma_" + s.with(0).str() + " and sigma_" + s.with(1).str() + " coincide");
    std::vector<BitWord> words;
    for (const auto& [s, sigma] : sys.sigma)
        words.push_back(sigma);
    ClosedTree out;
    out.tree = prefix_close(words);
    out.depth = sched.d[sys.levels + 1];
    const auto leaves = out.tree.maximal_nodes();
    out.perfect = leaves.size() == (std::size_t(1) << sys.levels) &&
                  std::all_of(leaves.begin(), leaves.end(), [&](const BitWord& w) { return w.size() == out.depth; });
    return out;
}

Rational EpsilonSeq::operator()(std::size_t m) const
{
    return Rational::pow2(-static_cast<std::int64_t>((2 * m + 2) * n + m));
}

std::vector<std::size_t> f_S(const NullCode& code, const EpsilonSeq& eps, std::size_t count)
{
    std::vector<std::size_t> f;
    if (count == 0)
        return f;
    f.push_back(0);
    const auto n = static_cast<std::int64_t>(code.arity());
    while (f.size() < count) {
        const std::size_t m = f.size() - 1;
        const Rational scale = Rational::pow2(static_cast<std::int64_t>(f[m]) * n);
        std::size_t k = 0;
        while (!(scale * null_tail(code, k) < eps(m)))
            ++k;
        f.push_back(k);
    }
    return f;
}

Rational DerivedSet::ratio() const
{
    return Rational(count(), 1) * Rational::pow2(-static_cast<std::int64_t>(arity * width()));
}

DerivedSet derive_J(const NullCode& code, const Schedule& sched, std::size_t j, std::size_t k)
{
    need_index(sched, 2 * k + 2 + j);
    DerivedSet out;
    out.k = k;
    out.j = j;
    out.lo = sched.d[2 * k + j];
    out.hi = sched.d[2 * k + 2 + j];
    out.arity = code.arity();
    const auto w = out.width();
    out.cubes = CubeUnion(out.arity * w);
    for (auto it = code.levels().lower_bound(sched.d[2 * k + 1 + j]); it != code.levels().end() && it->first < out.hi;
         ++it) {
        const auto i = it->first;
        for (const auto& t : it->second) {
            Cube cube(out.arity * w, -1);
            for (std::size_t q = 0; q < out.arity; ++q)
                for (auto p = out.lo; p < i; ++p)
                    cube[q * w + (p - out.lo)] = static_cast<std::int8_t>(t[q][p]);
            out.cubes.add(cube);
        }
    }
    return out;
}

DerivedSet derive_K(const DerivedSet& J, const Schedule& sched, std::size_t j, std::size_t k, std::size_t n)
{
    need_index(sched, 2 * k + 2 + j);
    if (J.arity != n || J.j != j || J.k != k)
        throw PreconditionError("derived J set does not match the requested K");
    DerivedSet out;
    out.k = k;
    out.j = j;
    out.arity = 1;
    out.lo = sched.c[2 * k + j];
    out.hi = sched.c[2 * k + 2 + j];
    out.cubes = CubeUnion(out.width());
    const auto mid = sched.c[2 * k + 1 + j];
    const auto la = sched.l[2 * k + 1 + j], lb = sched.l[2 * k + 2 + j];
    const auto split = sched.d[2 * k + 1 + j] - sched.d[2 * k + j];
    const auto wJ = J.width();
    const std::size_t blocks_a = std::size_t(1) << (2 * k + j);
    if (2 * k + 1 + j > 16 && !J.cubes.pieces().empty())
        throw PreconditionError("K_" + std::to_string(k) + " enumeration is too large");
    const std::size_t blocks_b = std::size_t(1) << (2 * k + 1 + j);
    for (const auto& piece : J.cubes.pieces())
        for_each_distinct_tuple(blocks_a, n, [&](const std::vector<std::size_t>& ia) {
            for_each_distinct_tuple(blocks_b, n, [&](const std::vector<std::size_t>& ib) {
                Cube cube(out.width(), -1);
                for (std::size_t q = 0; q < n; ++q) {
                    for (std::uint64_t p = 0; p < la; ++p)
                        cube[ia[q] * la + p] = piece[q * wJ + p];
                    for (std::uint64_t p = 0; p < lb; ++p)
                        cube[(mid - out.lo) + ib[q] * lb + p] = piece[q * wJ + split + p];
                }
                out.cubes.add(cube);
                return true;
            });
            return true;
        });
    return out;
}

bool in_J(const NullCode& code, const Schedule& sched, std::size_t j, std::size_t k, const BitTuple& s)
{
    need_index(sched, 2 * k + 2 + j);
    const auto lo = sched.d[2 * k + j], hi = sched.d[2 * k + 2 + j];
    for (auto it = code.levels().lower_bound(sched.d[2 * k + 1 + j]); it != code.levels().end() && it->first < hi;
         ++it) {
        const auto i = it->first;
        for (const auto& t : it->second) {
            bool agree = true;
            for (std::size_t q = 0; q < s.size() && agree; ++q)
                agree = t[q].slice(lo, i) == s[q].slice(0, i - lo);
            if (agree)
                return true;
        }
    }
    return false;
}

ClaimsReport check_claims(const NullCode& code, const Schedule& sched, const EpsilonSeq& eps, std::size_t window,
                          std::uint64_t seed)
{
    if (window > sched.N)
        throw PreconditionError("window exceeds the schedule");
    ClaimsReport rep;
    const auto n = static_cast<std::int64_t>(code.arity());
    rep.f_s = f_S(code, eps, window + 1);

    std::vector<bool> tail_ok;
    for (std::size_t m = 0; m + 1 < window; ++m) {
        Inequality row{"tail", m, 0, Rational::pow2(static_cast<std::int64_t>(sched.d[m]) * n) *
                                         null_tail(code, sched.d[m + 1]),
                       eps(m), true, false};
        row.holds = row.lhs < row.rhs;
        tail_ok.push_back(row.holds);
        rep.rows.push_back(row);
    }
    rep.tail_settles_at = tail_ok.size();
    while (rep.tail_settles_at > 0 && tail_ok[rep.tail_settles_at - 1])
        --rep.tail_settles_at;

    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; 2 * k + 2 + j <= window; ++k) {
            const auto J = derive_J(code, sched, j, k);
            const auto m = 2 * k + j;
            Rational bound;
            for (auto it = code.levels().lower_bound(sched.d[m + 1]); it != code.levels().end() && it->first < sched.d[m + 2];
                 ++it)
                bound += code.level_mass(it->first);
            bound *= Rational::pow2(static_cast<std::int64_t>(sched.d[m]) * n);
            Inequality count_row{"J-count", k, j, J.ratio(), bound, false, J.ratio() <= bound};
            Inequality j_row{"J-mass", k, j, J.ratio(), eps(m), true, J.ratio() < eps(m)};
            const auto K = derive_K(J, sched, j, k, code.arity());
            const auto blow = Rational::pow2(static_cast<std::int64_t>(4 * k + 1 + 2 * j) * n);
            Inequality kc_row{"K-count", k, j, K.ratio(), blow * J.ratio(), false, K.ratio() <= blow * J.ratio()};
            Inequality k_row{"K-mass", k, j, K.ratio(), eps(m) * blow, true, K.ratio() < eps(m) * blow};
            rep.pass = rep.pass && count_row.holds && kc_row.holds;
            if (m >= rep.tail_settles_at)
                rep.pass = rep.pass && j_row.holds && k_row.holds;
            for (auto* r : {&count_row, &j_row, &kc_row, &k_row})
                rep.rows.push_back(*r);
        }

    // Cover: a hit x|i in J_i with i in [d_{m}, d_{m+1}), m = 2k+1+j, puts
    // x restricted to [d_{2k+j}, d_{2k+2+j}) in J_k^j.
    std::mt19937_64 rng(seed);
    for (const auto& [i, level] : code.levels()) {
        std::size_t m = 1;
        while (m <= window && sched.d[m] <= i)
            ++m;
        --m;
        if (m == 0 || m + 1 > window || i < sched.d[1])
            continue;
        const std::size_t j = (m - 1) % 2, k = (m - 1 - j) / 2;
        const auto lo = sched.d[2 * k + j], hi = sched.d[2 * k + 2 + j];
        const auto J = derive_J(code, sched, j, k);
        for (const auto& t : level)
            for (int rep_i = 0; rep_i < 4; ++rep_i) {
                BitTuple s;
                std::vector<int> point;
                for (const auto& w : t) {
                    BitWord x = w;
                    while (x.size() < hi)
                        x.push_back(static_cast<int>(rng() & 1));
                    s.push_back(x.slice(lo, hi));
                    auto b = bits_of(s.back());
                    point.insert(point.end(), b.begin(), b.end());
                }
                ++rep.cover_samples;
                if (!in_J(code, sched, j, k, s) || !J.cubes.contains(point))
                    rep.cover_ok = false;
            }
    }
    rep.pass = rep.pass && rep.cover_ok;
    return rep;
}

std::size_t escape_index(const BitWord& r, const NullCode& code, const Schedule& sched, std::size_t j)
{
    std::size_t m = 0;
    for (std::size_t k = 0; 2 * k + 2 + j <= sched.N && sched.c[2 * k + 2 + j] <= r.size(); ++k) {
        const auto J = derive_J(code, sched, j, k);
        if (J.cubes.pieces().empty())
            continue;
        const auto K = derive_K(J, sched, j, k, code.arity());
        if (K.cubes.contains(bits_of(r.slice(K.lo, K.hi))))
            m = k + 1;
    }
    return m;
}

MutualReport verify_mutual_random(const FinBinTree& tree, const NullCode& code, const Schedule& sched,
                                  std::size_t horizon, std::size_t m0, std::size_t m1)
{
    need_index(sched, horizon);
    MutualReport rep;
    const auto len = sched.d[horizon];
    const auto branches = branches_at(tree, len);
    const std::size_t ms[2] = {m0, m1};
    for_each_distinct_tuple(branches.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
        BitTuple x;
        for (auto i : idx)
            x.push_back(branches[i]);
        ++rep.tuples;
        std::size_t sep = 0;
        while (sep + 1 < horizon) {
            BitTuple cut = restrict_tuple(x, sched.d[sep + 1]);
            bool distinct = true;
            for (std::size_t a = 0; a < cut.size() && distinct; ++a)
                for (std::size_t b = a + 1; b < cut.size() && distinct; ++b)
                    distinct = cut[a] != cut[b];
            if (distinct)
                break;
            ++sep;
        }
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = std::max(sep, ms[j]); 2 * k + 2 + j <= horizon; ++k) {
                const auto lo = sched.d[2 * k + j], hi = sched.d[2 * k + 2 + j];
                BitTuple s;
                for (const auto& w : x)
                    s.push_back(w.slice(lo, hi));
                ++rep.checks;
                if (in_J(code, sched, j, k, s)) {
                    rep.pass = false;
                    std::string t;
                    for (const auto& w : x)
                        t += (t.empty() ? "" : ",") + w.str();
                    rep.counterexample = "branches (" + t + ") restricted to [" + std::to_string(lo) + "," +
                                         std::to_string(hi) + ") lie in J_" + std::to_string(k) + "^" +
                                         std::to_string(j);
                    return false;
                }
            }
        return true;
    });
    return rep;
}

json to_json(const Schedule& s) { return {{"N", s.N}, {"d", s.d}, {"l", s.l}, {"c", s.c}}; }

json to_json(const ClaimsReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"claim", row.claim},
                        {"index", row.index},
                        {"j", row.j},
                        {"lhs", row.lhs.to_string()},
                        {"rhs", row.rhs.to_string()},
                        {"relation", row.strict ? "<" : "<="},
                        {"holds", row.holds}});
    return {{"f_S", r.f_s},
            {"rows", rows},
            {"tail_settles_at", r.tail_settles_at},
            {"cover_samples", r.cover_samples},
            {"cover_ok", r.cover_ok},
            {"pass", r.pass}};
}

json to_json(const MutualReport& r)
{
    json out = {{"pass", r.pass}, {"tuples", r.tuples}, {"checks", r.checks}};
    if (!r.pass)
        out["counterexample"] = r.counterexample;
    return out;
}

} // namespace mutgen
