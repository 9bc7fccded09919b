#ifndef MUTGEN_TREE_IO_HPP
#define MUTGEN_TREE_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "mutgen/trees.hpp"

namespace mutgen {

// Text form: one node per line, lexicographic; the empty word is "-".
// Binary nodes are 0/1 strings, natural-number nodes comma-separated, and
// split-marked natural-number nodes carry a trailing '*'.
std::string to_text(const FinBinTree& t);
std::string to_text(const FinNatTree& t);
FinBinTree bin_tree_from_text(std::string_view text);
FinNatTree nat_tree_from_text(std::string_view text, std::size_t split_width = 3);

// JSON form: nested {"label", "children"} objects. The root label is "-";
// every other label is the node's last symbol. Natural-number nodes add
// "split": true when marked.
nlohmann::json to_json(const FinBinTree& t);
nlohmann::json to_json(const FinNatTree& t);
FinBinTree bin_tree_from_json(const nlohmann::json& j);
FinNatTree nat_tree_from_json(const nlohmann::json& j, std::size_t split_width = 3);

} // namespace mutgen

#endif
