#include "mutgen/words.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "mutgen/errors.hpp"

namespace mutgen {

BitWord BitWord::parse(std::string_view text)
{
    if (text == "-")
        return BitWord();
    for (char c : text)
        if (c != '0' && c != '1')
            throw UsageError("not a bit word: '" + std::string(text) + "'");
    return BitWord(std::string(text));
}

BitWord BitWord::padded(std::size_t n) const
{
    if (bits_.size() >= n)
        return *this;
    return BitWord(bits_ + std::string(n - bits_.size(), '0'));
}

bool BitWord::is_prefix_of(const BitWord& other) const
{
    return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

std::ostream& operator<<(std::ostream& os, const BitWord& w) { return os << w.str(); }

NatWord parse_nat_word(std::string_view text)
{
    NatWord out;
    if (text == "-" || text.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto piece = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty())
            throw UsageError("not a natural-number word: '" + std::string(text) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::string format_nat_word(const NatWord& w)
{
    if (w.empty())
        return "-";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

bool is_prefix(const NatWord& a, const NatWord& b)
{
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

NatWord nat_prefix(const NatWord& w, std::size_t n)
{
    return NatWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())));
}

std::size_t common_prefix_length(const BitWord& a, const BitWord& b)
{
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i])
        ++i;
    return i;
}

std::size_t separation_level(const BitTuple& tuple)
{
    std::size_t level = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            level = std::max(level, common_prefix_length(tuple[i], tuple[j]) + 1);
    return level;
}

BitTuple restrict_tuple(const BitTuple& tuple, std::size_t n)
{
    BitTuple out;
    out.reserve(tuple.size());
    for (const auto& w : tuple)
        out.push_back(w.prefix(n));
    return out;
}

} // namespace mutgen
