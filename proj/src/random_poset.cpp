#include "mutgen/random_poset.hpp"

#include <algorithm>
#include <set>

#include "mutgen/errors.hpp"
#include "mutgen/tree_io.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

Box product_box(const std::vector<BitWord>& leaves) { return Box(leaves.begin(), leaves.end()); }

constexpr std::size_t kMaxExcludedBoxes = 4096;

std::optional<Rational> excluded_fraction(const std::vector<BitWord>& leaves, const std::vector<NullCode>& codes,
                                          std::size_t from, std::size_t to)
{
    ClopenSet e(leaves.size());
    bool too_big = false;
    for (const auto& code : codes)
        for (auto it = code.levels().upper_bound(from); it != code.levels().end() && it->first <= to && !too_big;
             ++it)
            for_each_distinct_tuple(leaves.size(), code.arity(), [&](const std::vector<std::size_t>& idx) {
                for (const auto& t : it->second) {
                    bool inside = true;
                    for (std::size_t q = 0; q < idx.size() && inside; ++q)
                        inside = leaves[idx[q]].is_prefix_of(t[q]);
                    if (!inside)
                        continue;
                    Box b = product_box(leaves);
                    for (std::size_t q = 0; q < idx.size(); ++q)
                        b[idx[q]] = t[q];
                    e.boxes.push_back(std::move(b));
                    if (e.boxes.size() > kMaxExcludedBoxes) {
                        too_big = true;
                        return false;
                    }
                }
                return true;
            });
    if (too_big)
        return std::nullopt;
    const ClopenSet whole(leaves.size(), {product_box(leaves)});
    return measure(e) / measure(whole);
}

} // namespace

RandomCondition::RandomCondition(std::size_t k, FinBinTree t, std::vector<BitWord> leaves, ClopenSet b)
    : k_(k), t_(std::move(t)), leaves_(std::move(leaves)), b_(std::move(b))
{
    if (leaves_.empty())
        throw PreconditionError("a condition needs at least one leaf");
    if (b_.arity != leaves_.size())
        throw PreconditionError("B has arity " + std::to_string(b_.arity) + " but there are " +
                                std::to_string(leaves_.size()) + " leaves");
    std::vector<BitWord> sorted = leaves_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("leaves must be distinct");
    if (sorted != t_.maximal_nodes())
        throw PreconditionError("leaves must be exactly the maximal nodes of T");
    for (const auto& l : leaves_)
        if (l.size() != k_)
            throw PreconditionError("leaf " + l.str() + " does not have length " + std::to_string(k_));
    if (!measure(b_).is_positive())
        throw PreconditionError("B must have positive measure");
    if (!is_subset(b_, ClopenSet(b_.arity, {product_box(leaves_)})))
        throw PreconditionError("B must lie inside the product of the leaf cylinders");
}

RandomCondition RandomCondition::trivial()
{
    return RandomCondition(0, FinBinTree(), {BitWord()}, ClopenSet(1, {Box{BitWord()}}));
}

std::optional<std::vector<std::size_t>> index_map(const RandomCondition& p, const RandomCondition& q)
{
    if (p.n() < q.n() || p.k() < q.k())
        return std::nullopt;
    std::vector<std::size_t> j(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (i < q.n()) {
            if (!q.leaves()[i].is_prefix_of(p.leaves()[i]))
                return std::nullopt;
            j[i] = i;
            continue;
        }
        const auto& leaves = q.leaves();
        auto it = std::find_if(leaves.begin(), leaves.end(),
                               [&](const BitWord& t) { return t.is_prefix_of(p.leaves()[i]); });
        if (it == leaves.end())
            return std::nullopt;
        j[i] = static_cast<std::size_t>(it - leaves.begin());
    }
    return j;
}

bool leq(const RandomCondition& p, const RandomCondition& q)
{
    if (p.k() < q.k() || p.n() < q.n())
        return false;
    for (const auto& w : q.tree().nodes())
        if (!p.tree().contains(w))
            return false;
    const auto j = index_map(p, q);
    if (!j)
        return false;
    std::vector<std::vector<std::size_t>> pre(q.n());
    for (std::size_t i = 0; i < p.n(); ++i)
        pre[(*j)[i]].push_back(i);
    // one preimage per coordinate of q: exactly the Gamma on which j is injective
    std::vector<std::size_t> pick(q.n(), 0);
    for (;;) {
        std::vector<std::size_t> perm(q.n());
        for (std::size_t c = 0; c < q.n(); ++c)
            perm[c] = pre[c][pick[c]];
        if (!is_subset(project(p.b(), perm), q.b()))
            return false;
        std::size_t c = q.n();
        while (c-- > 0) {
            if (++pick[c] < pre[c].size())
                break;
            pick[c] = 0;
        }
        if (c >= q.n())
            return true;
    }
}

std::optional<RandomCondition> common_extension(const RandomCondition& p, const RandomCondition& q)
{
    if (!p.same_finite_part(q))
        throw PreconditionError("common_extension needs conditions with the same finite part");
    ClopenSet b = intersect(p.b(), q.b());
    if (!measure(b).is_positive())
        return std::nullopt;
    return RandomCondition(p.k(), p.tree(), p.leaves(), std::move(b));
}

LinkedKey linked_class_key(const RandomCondition& p, std::size_t resolution)
{
    if (resolution < p.k())
        throw PreconditionError("resolution must be at least k");
    const ClopenSet b = disjointify(p.b());
    std::set<Box> candidates;
    for (const auto& box : b.boxes) {
        ClopenSet cut(p.n());
        Box t;
        for (const auto& w : box)
            t.push_back(w.prefix(std::min(w.size(), resolution)));
        cut.boxes.push_back(t);
        const auto expanded = normalize(cut, resolution);
        candidates.insert(expanded.boxes.begin(), expanded.boxes.end());
    }
    for (const auto& c : candidates) {
        const ClopenSet cs(p.n(), {c});
        if (measure(intersect(b, cs)) * Rational(3) > measure(cs) * Rational(2)) {
            LinkedKey key;
            key.k = p.k();
            key.tree_nodes.assign(p.tree().nodes().begin(), p.tree().nodes().end());
            key.leaves = p.leaves();
            key.c = c;
            return key;
        }
    }
    throw NoKeyAtResolution("no box at resolution " + std::to_string(resolution) +
                            " is more than two thirds covered by B");
}

RandomRun generic_random_tree(const std::vector<NullCode>& codes, std::size_t rounds, const FusionOptions& options)
{
    if (rounds == 0)
        throw PreconditionError("generic_random_tree needs at least one round");
    RandomRun run;
    run.chain.push_back(RandomCondition::trivial());
    std::vector<BitWord> leaves{BitWord()};
    for (std::size_t r = 0; r < rounds; ++r) {
        std::vector<BitWord> split;
        for (const auto& l : leaves)
            split.push_back(l.with(0));
        for (const auto& l : leaves)
            split.push_back(l.with(1));
        leaves = std::move(split);
        const std::size_t len = leaves.front().size();
        run.chain.emplace_back(len, prefix_close(leaves), leaves, ClopenSet(leaves.size(), {product_box(leaves)}));

        bool need_null = false;
        for (const auto& c : codes)
            need_null = need_null || (c.top_level() && *c.top_level() > len);
        if (!need_null)
            continue;
        run.excluded.push_back(excluded_fraction(leaves, codes, len, len + options.max_width));
        run.result.null_steps.push_back(null_control(leaves, codes, options.max_width, options, r));
        run.chain.emplace_back(leaves.front().size(), prefix_close(leaves), leaves,
                               ClopenSet(leaves.size(), {product_box(leaves)}));
    }
    auto sorted = leaves;
    std::sort(sorted.begin(), sorted.end());
    run.result.leaves = sorted;
    run.result.depth = leaves.front().size();
    run.result.tree = prefix_close(leaves);
    run.result.null_stage_threshold = null_hit_threshold(leaves, codes);
    return run;
}

json to_json(const RandomCondition& p)
{
    json leaves = json::array();
    for (const auto& l : p.leaves())
        leaves.push_back(l.str());
    return {{"k", p.k()}, {"n", p.n()}, {"tree", to_json(p.tree())}, {"leaves", leaves}, {"B", to_json(p.b())}};
}

RandomCondition random_condition_from_json(const json& j)
{
    try {
        std::vector<BitWord> leaves;
        for (const auto& l : j.at("leaves"))
            leaves.push_back(BitWord::parse(l.get<std::string>()));
        FinBinTree t = j.contains("tree") ? bin_tree_from_json(j.at("tree")) : prefix_close(leaves);
        const auto k = j.value("k", leaves.front().size());
        return RandomCondition(k, std::move(t), leaves, clopen_from_json(j.at("B"), leaves.size()));
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed random condition: ") + e.what());
    }
}

} // namespace mutgen
