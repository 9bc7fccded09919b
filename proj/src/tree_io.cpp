#include "mutgen/tree_io.hpp"

#include <sstream>

#include "mutgen/errors.hpp"

namespace mutgen {

using nlohmann::json;

namespace {

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
        ++i;
    return s.substr(i);
}

json bin_node_json(const FinBinTree& t, const BitWord& w)
{
    json node;
    node["label"] = w.empty() ? std::string("-") : std::to_string(w[w.size() - 1]);
    json children = json::array();
    for (int b : {0, 1})
        if (t.contains(w.with(b)))
            children.push_back(bin_node_json(t, w.with(b)));
    node["children"] = std::move(children);
    return node;
}

void collect_bin(const json& j, const BitWord& w, std::set<BitWord>& out)
{
    out.insert(w);
    if (!j.contains("children"))
        return;
    for (const auto& c : j.at("children")) {
        const auto& label = c.at("label");
        std::string s = label.is_string() ? label.get<std::string>() : std::to_string(label.get<int>());
        if (s != "0" && s != "1")
            throw UsageError("binary tree label must be 0 or 1, got '" + s + "'");
        collect_bin(c, w.with(s == "1"), out);
    }
}

json nat_node_json(const FinNatTree& t, const NatWord& w)
{
    json node;
    if (w.empty())
        node["label"] = "-";
    else
        node["label"] = w.back();
    if (t.is_split(w))
        node["split"] = true;
    json children = json::array();
    for (auto s : t.successors(w)) {
        NatWord c = w;
        c.push_back(s);
        children.push_back(nat_node_json(t, c));
    }
    node["children"] = std::move(children);
    return node;
}

void collect_nat(const json& j, const NatWord& w, std::set<NatWord>& nodes, std::set<NatWord>& split)
{
    nodes.insert(w);
    if (j.value("split", false))
        split.insert(w);
    if (!j.contains("children"))
        return;
    for (const auto& c : j.at("children")) {
        NatWord child = w;
        const auto& label = c.at("label");
        if (label.is_number_unsigned() || label.is_number_integer())
            child.push_back(label.get<std::uint64_t>());
        else
            child.push_back(std::stoull(label.get<std::string>()));
        collect_nat(c, child, nodes, split);
    }
}

} // namespace

std::string to_text(const FinBinTree& t)
{
    std::string out;
    for (const auto& w : t.nodes())
        out += w.str() + "\n";
    return out;
}

std::string to_text(const FinNatTree& t)
{
    std::string out;
    for (const auto& w : t.nodes())
        out += format_nat_word(w) + (t.is_split(w) ? "*" : "") + "\n";
    return out;
}

FinBinTree bin_tree_from_text(std::string_view text)
{
    std::set<BitWord> nodes;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        nodes.insert(BitWord::parse(line));
    }
    return FinBinTree(std::move(nodes));
}

FinNatTree nat_tree_from_text(std::string_view text, std::size_t split_width)
{
    std::set<NatWord> nodes, split;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        bool mark = line.back() == '*';
        if (mark)
            line.pop_back();
        NatWord w = parse_nat_word(line);
        nodes.insert(w);
        if (mark)
            split.insert(w);
    }
    return FinNatTree(std::move(nodes), std::move(split), split_width);
}

json to_json(const FinBinTree& t) { return bin_node_json(t, BitWord()); }
json to_json(const FinNatTree& t) { return nat_node_json(t, NatWord{}); }

FinBinTree bin_tree_from_json(const json& j)
{
    std::set<BitWord> nodes;
    collect_bin(j, BitWord(), nodes);
    return FinBinTree(std::move(nodes));
}

FinNatTree nat_tree_from_json(const json& j, std::size_t split_width)
{
    std::set<NatWord> nodes, split;
    collect_nat(j, NatWord{}, nodes, split);
    return FinNatTree(std::move(nodes), std::move(split), split_width);
}

} // namespace mutgen
