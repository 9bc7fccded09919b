#include "mutgen/fusion.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mutgen/errors.hpp"
#include "mutgen/tree_io.hpp"

namespace mutgen {

using nlohmann::json;

void for_each_distinct_tuple(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx;
    std::vector<bool> used(n, false);
    std::function<bool()> rec = [&]() -> bool {
        if (idx.size() == k)
            return f(idx);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i])
                continue;
            used[i] = true;
            idx.push_back(i);
            bool go = rec();
            idx.pop_back();
            used[i] = false;
            if (!go)
                return false;
        }
        return true;
    };
    rec();
}

namespace {

std::string tuple_str(const BitTuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + t[i].str();
    return s + ")";
}

bool pairwise_distinct(const BitTuple& t)
{
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j])
                return false;
    return true;
}

void pad_all(std::vector<BitWord>& leaves)
{
    std::size_t len = 0;
    for (const auto& l : leaves)
        len = std::max(len, l.size());
    for (auto& l : leaves)
        l = l.padded(len);
}

void nd_round(std::vector<BitWord>& leaves, const FusionTask& task, std::size_t stage, std::vector<Commitment>& log)
{
    for (std::size_t c = 0; c < task.nd_codes.size(); ++c) {
        const auto& code = *task.nd_codes[c];
        for_each_distinct_tuple(leaves.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
            Box box;
            for (auto i : idx)
                box.push_back(leaves[i]);
            Box out = avoid(code, box);
            if (out != box) {
                for (std::size_t q = 0; q < idx.size(); ++q)
                    leaves[idx[q]] = out[q];
                pad_all(leaves);
            }
            log.push_back({c, std::move(box), stage, std::move(out)});
            return true;
        });
    }
}

// Joint extension of all leaves by `width` bits so that no tuple of distinct
// leaves lands in J_m for the newly covered levels.
class NullSearch {
public:
    NullSearch(std::vector<BitWord>& leaves, const std::vector<NullCode>& codes, std::size_t width,
               const FusionOptions& opt, std::size_t stage)
        : leaves_(leaves), codes_(codes), width_(width), opt_(opt), stage_(stage)
    {
        from_ = leaves_.front().size();
        to_ = from_ + width_;
        index_.resize(codes_.size());
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            const auto& code = codes_[c];
            for (auto it = code.levels().upper_bound(from_); it != code.levels().end() && it->first <= to_; ++it) {
                auto& by_pos = index_[c][it->first];
                by_pos.resize(code.arity());
                for (const auto& t : it->second) {
                    if (!pairwise_distinct(t))
                        continue;
                    for (std::size_t p = 0; p < t.size(); ++p)
                        by_pos[p][t[p]].push_back(&t);
                }
                levels_.insert(it->first);
            }
        }
        for (auto m : levels_)
            counts_[m];
    }

    NullStep run()
    {
        NullStep step{stage_, from_, to_, expected_hits(), 0};
        const std::size_t n = leaves_.size();
        const std::uint64_t span = std::uint64_t(1) << width_;
        std::vector<std::uint64_t> next(n, 0), chosen(n, 0), mask(n, 0);
        std::vector<BitWord> full(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (opt_.seed != 0) {
                std::mt19937_64 rng(opt_.seed ^ (stage_ * 0x9E3779B97F4A7C15ULL) ^ (i * 0xBF58476D1CE4E5B9ULL));
                mask[i] = rng() & (span - 1);
            }
        }
        std::size_t i = 0;
        while (i < n) {
            bool placed = false;
            while (next[i] < span) {
                if (++step.candidates > opt_.node_budget)
                    throw TailTooFat(fail_message("candidate budget exhausted"));
                const std::uint64_t v = next[i]++ ^ mask[i];
                BitWord x = leaves_[i];
                for (std::size_t b = width_; b-- > 0;)
                    x.push_back(static_cast<int>((v >> b) & 1));
                if (!clean(x))
                    continue;
                full[i] = x;
                add(x, +1);
                placed = true;
                break;
            }
            if (placed) {
                ++i;
                if (i < n)
                    next[i] = 0;
                continue;
            }
            if (i == 0)
                throw TailTooFat(fail_message("no safe extension exists"));
            --i;
            add(full[i], -1);
        }
        leaves_ = std::move(full);
        return step;
    }

private:
    std::string fail_message(const std::string& why) const
    {
        std::ostringstream os;
        os << "null control from length " << from_ << " to " << to_ << " at stage " << stage_ << ": " << why;
        return os.str();
    }

    Rational expected_hits() const
    {
        std::set<BitWord> present(leaves_.begin(), leaves_.end());
        Rational e;
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            const auto k = static_cast<std::int64_t>(codes_[c].arity());
            for (auto m : levels_)
                for (const auto& t : codes_[c].level(m)) {
                    BitTuple base = restrict_tuple(t, from_);
                    bool ok = pairwise_distinct(base);
                    for (std::size_t q = 0; q < base.size() && ok; ++q)
                        ok = present.count(base[q]) != 0;
                    if (ok)
                        e += Rational::pow2(-k * static_cast<std::int64_t>(m - from_));
                }
        }
        return e;
    }

    bool clean(const BitWord& x) const
    {
        for (std::size_t c = 0; c < codes_.size(); ++c)
            for (const auto& [m, by_pos] : index_[c]) {
                const BitWord w = x.prefix(m);
                const auto& seen = counts_.at(m);
                for (std::size_t p = 0; p < by_pos.size(); ++p) {
                    auto it = by_pos[p].find(w);
                    if (it == by_pos[p].end())
                        continue;
                    for (const BitTuple* t : it->second) {
                        bool hit = true;
                        for (std::size_t q = 0; q < t->size() && hit; ++q)
                            if (q != p) {
                                auto s = seen.find((*t)[q]);
                                hit = s != seen.end() && s->second > 0;
                            }
                        if (hit)
                            return false;
                    }
                }
            }
        return true;
    }

    void add(const BitWord& x, int delta)
    {
        for (auto m : levels_)
            counts_[m][x.prefix(m)] += delta;
    }

    std::vector<BitWord>& leaves_;
    const std::vector<NullCode>& codes_;
    std::size_t width_;
    const FusionOptions& opt_;
    std::size_t stage_;
    std::size_t from_ = 0, to_ = 0;
    std::vector<std::map<std::size_t, std::vector<std::unordered_map<BitWord, std::vector<const BitTuple*>>>>> index_;
    std::set<std::size_t> levels_;
    std::map<std::size_t, std::unordered_map<BitWord, int>> counts_;
};

} // namespace

NullStep null_control(std::vector<BitWord>& leaves, const std::vector<NullCode>& codes, std::size_t width,
                      const FusionOptions& opt, std::size_t stage)
{
    if (leaves.empty())
        throw PreconditionError("null control needs at least one leaf");
    for (const auto& l : leaves)
        if (l.size() != leaves.front().size())
            throw PreconditionError("null control needs leaves of one length");
    if (width == 0 || width > 24)
        throw InsufficientBits("null control step of " + std::to_string(width) + " bits is out of range");
    return NullSearch(leaves, codes, width, opt, stage).run();
}

FusionResult fuse(const FusionTask& task)
{
    if (task.rounds == 0)
        throw PreconditionError("fusion needs at least one round");
    for (const auto& c : task.nd_codes)
        if (!c || c->arity() == 0)
            throw PreconditionError("nowhere dense code arity must be at least 1");
    const auto& opt = task.options;
    if (opt.max_width == 0 || opt.max_width > 20)
        throw PreconditionError("max_width must lie in [1,20]");

    FusionResult res;
    std::vector<BitWord> leaves{BitWord()};
    for (std::size_t r = 0; r < task.rounds; ++r) {
        std::vector<BitWord> split;
        for (const auto& l : leaves) {
            split.push_back(l.with(0));
            split.push_back(l.with(1));
        }
        leaves = std::move(split);
        nd_round(leaves, task, r, res.commitments);

        const std::size_t len = leaves.front().size();
        bool need_null = false;
        for (const auto& c : task.null_codes)
            need_null = need_null || (c.top_level() && *c.top_level() > len);
        std::size_t width = need_null ? opt.max_width : 0;
        if (opt.max_depth) {
            const std::size_t cap = *opt.max_depth;
            const std::size_t reserve = 2 * (task.rounds - 1 - r);
            if (len + reserve > cap)
                throw InsufficientDepth("depth " + std::to_string(cap) + " is too small: leaves reached length " +
                                        std::to_string(len) + " after round " + std::to_string(r));
            if (r + 1 == task.rounds)
                width = cap - len;
            else
                width = std::min(width, cap - len - reserve);
            if (need_null && width == 0 && r + 1 < task.rounds)
                throw InsufficientDepth("no room for null control in round " + std::to_string(r));
        }
        if (width > 0) {
            res.null_steps.push_back(null_control(leaves, task.null_codes, width, opt, r));
        }
    }
    res.depth = leaves.front().size();
    res.tree = prefix_close(leaves);
    res.leaves = leaves;
    res.null_stage_threshold = null_hit_threshold(leaves, task.null_codes);
    return res;
}

std::size_t null_hit_threshold(const std::vector<BitWord>& leaves, const std::vector<NullCode>& codes)
{
    if (leaves.empty())
        return 0;
    std::size_t depth = leaves.front().size();
    for (const auto& l : leaves)
        depth = std::min(depth, l.size());
    std::size_t threshold = 0;
    for (const auto& code : codes)
        for (const auto& [m, level] : code.levels()) {
            if (m > depth)
                break;
            std::set<BitWord> present;
            for (const auto& l : leaves)
                present.insert(l.prefix(m));
            for (const auto& t : level) {
                if (!pairwise_distinct(t))
                    continue;
                bool hit = true;
                for (std::size_t q = 0; q < t.size() && hit; ++q)
                    hit = present.count(t[q]) != 0;
                if (hit)
                    threshold = std::max(threshold, m + 1);
            }
        }
    return threshold;
}

VerifyReport verify_free_tuples(const FinBinTree& tree, const FusionTask& task, std::size_t threshold)
{
    VerifyReport rep;
    const auto leaves = tree.maximal_nodes();
    for (std::size_t c = 0; c < task.nd_codes.size() && rep.pass; ++c) {
        const auto& code = *task.nd_codes[c];
        for_each_distinct_tuple(leaves.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
            Box box;
            for (auto i : idx)
                box.push_back(leaves[i]);
            ++rep.nd_tuples;
            auto m = code.meets(box);
            if (!m) {
                ++rep.nd_unchecked;
            } else if (*m) {
                rep.pass = false;
                rep.counterexample = "nowhere dense code " + std::to_string(c) + " (" + code.name() +
                                     ") meets leaves " + tuple_str(box);
                return false;
            }
            return true;
        });
    }
    for (std::size_t c = 0; c < task.null_codes.size() && rep.pass; ++c) {
        const auto& code = task.null_codes[c];
        for_each_distinct_tuple(leaves.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
            BitTuple x;
            std::size_t depth = SIZE_MAX;
            for (auto i : idx) {
                x.push_back(leaves[i]);
                depth = std::min(depth, leaves[i].size());
            }
            const std::size_t lo = std::max(threshold, separation_level(x));
            for (std::size_t m = lo; m <= depth; ++m) {
                ++rep.null_checks;
                if (code.hits(x, m)) {
                    rep.pass = false;
                    rep.counterexample = "null code " + std::to_string(c) + ": leaves " + tuple_str(x) +
                                         " restricted to length " + std::to_string(m) + " lie in J_" +
                                         std::to_string(m);
                    return false;
                }
            }
            return true;
        });
    }
    return rep;
}

FusionTask fusion_task_from_json(const json& j)
{
    FusionTask task;
    try {
        if (j.contains("nd_codes"))
            for (const auto& c : j.at("nd_codes")) {
                if (c.contains("code")) {
                    auto code = nd_code_from_json(c.at("code"));
                    if (c.contains("arity") && c.at("arity").get<std::size_t>() != code->arity())
                        throw UsageError("declared arity does not match code " + code->name());
                    task.nd_codes.push_back(code);
                } else {
                    task.nd_codes.push_back(nd_code_from_json(c));
                }
            }
        if (j.contains("null_codes"))
            for (const auto& c : j.at("null_codes"))
                task.null_codes.push_back(null_code_from_json(c.contains("code") ? c.at("code") : c));
        task.rounds = j.value("rounds", std::size_t(1));
        task.options.seed = j.value("seed", std::uint64_t(0));
        task.options.max_width = j.value("max_width", std::size_t(2));
        task.options.node_budget = j.value("node_budget", task.options.node_budget);
        if (j.contains("max_depth"))
            task.options.max_depth = j.at("max_depth").get<std::size_t>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed fusion task: ") + e.what());
    }
    return task;
}

json to_json(const FusionResult& r)
{
    json leaves = json::array();
    for (const auto& l : r.leaves)
        leaves.push_back(l.str());
    json commitments = json::array();
    for (const auto& c : r.commitments)
        commitments.push_back({{"code", c.code}, {"stage", c.stage}, {"tuple", to_json(c.tuple)}, {"box", to_json(c.box)}});
    json steps = json::array();
    for (const auto& s : r.null_steps)
        steps.push_back({{"stage", s.stage},
                         {"from", s.from},
                         {"to", s.to},
                         {"expected_hits", s.expected_hits.to_string()},
                         {"candidates", s.candidates}});
    return {{"depth", r.depth},
            {"leaves", leaves},
            {"tree", to_json(r.tree)},
            {"null_stage_threshold", r.null_stage_threshold},
            {"null_steps", steps},
            {"commitments", commitments}};
}

json to_json(const VerifyReport& r)
{
    json out = {{"pass", r.pass},
                {"nd_tuples", r.nd_tuples},
                {"nd_unchecked", r.nd_unchecked},
                {"null_checks", r.null_checks}};
    if (!r.pass)
        out["counterexample"] = r.counterexample;
    return out;
}

} // namespace mutgen
