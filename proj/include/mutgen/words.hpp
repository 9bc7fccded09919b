#ifndef MUTGEN_WORDS_HPP
#define MUTGEN_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mutgen {

/// Finite 0/1 sequence. Ordered lexicographically with a prefix sorting
/// before its extensions ("0" < "00" < "01" < "1").
class BitWord {
public:
    BitWord() = default;
    /// Accepts a string over {'0','1'}; "-" denotes the empty word.
    static BitWord parse(std::string_view text);
    static BitWord zeros(std::size_t n) { return BitWord(std::string(n, '0')); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i] - '0'; }

    void push_back(int b) { bits_.push_back(b ? '1' : '0'); }
    void set(std::size_t i, int b) { bits_[i] = b ? '1' : '0'; }
    BitWord prefix(std::size_t n) const { return BitWord(bits_.substr(0, n)); }
    /// Bits in [lo, hi) as a fresh word.
    BitWord slice(std::size_t lo, std::size_t hi) const { return BitWord(bits_.substr(lo, hi - lo)); }
    BitWord with(int b) const { BitWord w = *this; w.push_back(b); return w; }
    BitWord operator+(const BitWord& tail) const { return BitWord(bits_ + tail.bits_); }
    BitWord padded(std::size_t n) const;

    bool is_prefix_of(const BitWord& other) const;
    bool compatible(const BitWord& other) const { return is_prefix_of(other) || other.is_prefix_of(*this); }

    /// 0/1 string; empty word prints as "-".
    std::string str() const { return bits_.empty() ? std::string("-") : bits_; }
    const std::string& raw() const { return bits_; }

    friend bool operator==(const BitWord&, const BitWord&) = default;
    friend std::strong_ordering operator<=>(const BitWord& a, const BitWord& b) { return a.bits_ <=> b.bits_; }

private:
    explicit BitWord(std::string bits) : bits_(std::move(bits)) {}
    std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const BitWord& w);

/// Tuple of bit words, one per coordinate of a product space.
using BitTuple = std::vector<BitWord>;

/// Finite sequence of naturals (element of omega^{<omega}).
using NatWord = std::vector<std::uint64_t>;

/// Comma-separated naturals; "-" is the empty word.
NatWord parse_nat_word(std::string_view text);
std::string format_nat_word(const NatWord& w);
bool is_prefix(const NatWord& a, const NatWord& b);
NatWord nat_prefix(const NatWord& w, std::size_t n);

/// Length of the longest common prefix.
std::size_t common_prefix_length(const BitWord& a, const BitWord& b);

/// Level at which the coordinates of a tuple become pairwise distinct:
/// one more than the longest common prefix of any two coordinates.
/// A one-element tuple separates at level 0.
std::size_t separation_level(const BitTuple& tuple);

/// Each coordinate restricted to its first n symbols.
BitTuple restrict_tuple(const BitTuple& tuple, std::size_t n);

} // namespace mutgen

template <>
struct std::hash<mutgen::BitWord> {
    std::size_t operator()(const mutgen::BitWord& w) const noexcept { return std::hash<std::string>{}(w.raw()); }
};

#endif
