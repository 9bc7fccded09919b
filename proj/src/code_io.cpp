#include <map>

#include "mutgen/codes.hpp"
#include "mutgen/errors.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

BitWord word_from_json(const json& j)
{
    if (!j.is_string())
        throw UsageError("expected a 0/1 word string, got " + j.dump());
    return BitWord::parse(j.get<std::string>());
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    throw UsageError("expected a rational as integer or \"p/q\" string, got " + j.dump());
}

std::size_t param(const json& j, const char* key)
{
    if (!j.contains("params") || !j.at("params").contains(key))
        throw UsageError(std::string("missing parameter '") + key + "'");
    return j.at("params").at(key).get<std::size_t>();
}

} // namespace

Box box_from_json(const json& j)
{
    if (!j.is_array() || j.empty())
        throw UsageError("a box is a nonempty list of words");
    Box b;
    for (const auto& w : j)
        b.push_back(word_from_json(w));
    return b;
}

json to_json(const Box& b)
{
    json out = json::array();
    for (const auto& w : b)
        out.push_back(w.str());
    return out;
}

ClopenSet clopen_from_json(const json& j, std::size_t arity)
{
    if (!j.is_array())
        throw UsageError("a clopen set is a list of boxes");
    std::vector<Box> boxes;
    for (const auto& b : j)
        boxes.push_back(box_from_json(b));
    return ClopenSet(arity, std::move(boxes));
}

json to_json(const ClopenSet& s)
{
    json out = json::array();
    for (const auto& b : s.boxes)
        out.push_back(to_json(b));
    return out;
}

NullCode null_code_from_json(const json& j)
{
    try {
        const auto arity = j.at("arity").get<std::size_t>();
        const auto horizon = j.at("horizon").get<std::size_t>();
        std::map<std::size_t, NullCode::Level> levels;
        if (j.contains("levels"))
            for (const auto& [key, tuples] : j.at("levels").items()) {
                const auto m = static_cast<std::size_t>(std::stoull(key));
                for (const auto& t : tuples) {
                    BitTuple tuple;
                    if (t.is_string())
                        tuple.push_back(word_from_json(t));
                    else
                        for (const auto& w : t)
                            tuple.push_back(word_from_json(w));
                    // the empty word at level 0 is written "-"
                    levels[m].insert(std::move(tuple));
                }
            }
        const auto& tail = j.at("tail");
        return NullCode(arity, horizon, std::move(levels), rational_from_json(tail.at("a")),
                        rational_from_json(tail.at("rho")));
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed null code: ") + e.what());
    }
}

json to_json(const NullCode& c)
{
    json levels = json::object();
    for (const auto& [m, tuples] : c.levels()) {
        json list = json::array();
        for (const auto& t : tuples)
            list.push_back(to_json(t));
        levels[std::to_string(m)] = list;
    }
    return {{"arity", c.arity()},
            {"horizon", c.horizon()},
            {"levels", levels},
            {"tail", {{"a", c.tail_a().to_string()}, {"rho", c.tail_rho().to_string()}}}};
}

NdCodePtr nd_code_from_json(const json& j)
{
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "tree") {
            const auto arity = j.at("arity").get<std::size_t>();
            std::set<BitTuple> nodes;
            for (const auto& t : j.at("nodes"))
                nodes.insert(box_from_json(t));
            return tree_code(arity, nodes);
        }
        if (kind != "builtin")
            throw UsageError("unknown code kind '" + kind + "'");
        const auto name = j.at("name").get<std::string>();
        if (name == "diag")
            return diag_code(param(j, "m"));
        if (name == "even-zeros")
            return even_zeros_code();
        if (name == "agree-tail")
            return agree_tail_code(param(j, "p"));
        if (name == "tf" || name == "pair")
            throw UsageError("code '" + name + "' lives on Baire space; use the super subcommand");
        throw UsageError("unknown builtin code '" + name + "'");
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed nowhere dense code: ") + e.what());
    }
}

} // namespace mutgen
