#pragma once

#include "mbfreal/errors.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbfreal {

inline constexpr int kMaxArity = 8;
inline constexpr int kMaxEnumerationArity = 5;

// A vertex of the n-cube. Variable y_i (1-based) is bit i-1 of index.
struct Corner {
    int n = 0;
    std::uint32_t index = 0;

    bool bit(int var) const { return (index >> (var - 1)) & 1u; }

    // "y1y2...yn": the leftmost character is y1.
    static Corner parse(std::string_view text);
    std::string str() const;

    auto operator<=>(const Corner&) const = default;
};

inline bool corner_leq(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

std::uint32_t insert_bit(std::uint32_t index, int var, bool value);
std::uint32_t remove_bit(std::uint32_t index, int var);

// Fixed-capacity truth table for up to 2^8 corners.
class TruthTable {
public:
    bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint32_t i, bool v = true) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(std::uint32_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool subset_of(const TruthTable& o) const {
        for (int w = 0; w < 4; ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }
    int popcount() const;
    std::uint64_t word(int w) const { return words_[w]; }

    bool operator==(const TruthTable&) const = default;
    // Orders by the table read as a 256-bit unsigned integer.
    std::strong_ordering operator<=>(const TruthTable& o) const {
        for (int w = 3; w >= 0; --w)
            if (words_[w] != o.words_[w]) return words_[w] <=> o.words_[w];
        return std::strong_ordering::equal;
    }

private:
    std::array<std::uint64_t, 4> words_{};
};

// Raw table on 2^n corners, not necessarily monotone.
struct BooleanFunction {
    int n = 0;
    TruthTable table;

    bool operator()(std::uint32_t corner) const { return table.test(corner); }
};

enum class Sign { Plus, Minus };

bool is_monotone_positive(int n, const TruthTable& table);
bool is_sign_monotone(int n, const TruthTable& table, const std::vector<Sign>& signs);

// Positive monotone Boolean function. Construction validates monotonicity.
class MbfFunction {
public:
    MbfFunction() = default;
    MbfFunction(int n, const TruthTable& table);

    static MbfFunction constant(int n, bool value);
    // Builds from the list of true corners, e.g. {"101", "011", "111"}.
    static MbfFunction from_true_corners(int n, const std::vector<std::string>& corners);
    static MbfFunction from_hex(std::string_view text);

    int arity() const { return n_; }
    std::uint32_t corner_count() const { return std::uint32_t{1} << n_; }
    bool operator()(std::uint32_t corner) const { return table_.test(corner); }
    const TruthTable& table() const { return table_; }
    int true_count() const { return table_.popcount(); }
    std::vector<std::uint32_t> true_corners() const;
    std::vector<std::uint32_t> false_corners() const;

    std::string to_hex() const;
    // Human-readable true-corner list, e.g. "{101,011,111}".
    std::string corners_str() const;

    bool operator==(const MbfFunction&) const = default;
    std::strong_ordering operator<=>(const MbfFunction& o) const {
        if (n_ != o.n_) return n_ <=> o.n_;
        return table_ <=> o.table_;
    }

private:
    int n_ = 0;
    TruthTable table_;
};

// f_1 <= f_2 <= ... <= f_k in the implication order. Equal neighbours are allowed.
using OrderedTuple = std::vector<MbfFunction>;

bool implies(const MbfFunction& f, const MbfFunction& g);
bool strictly_precedes(const MbfFunction& f, const MbfFunction& g);
// Throws ArityMismatch or std::invalid_argument when the tuple is not a chain.
void validate_tuple(const OrderedTuple& tuple);

// Flips the inputs with negative sign: f(y) = raw(beta(y)).
MbfFunction beta_normalize(const BooleanFunction& raw, const std::vector<Sign>& signs);
BooleanFunction beta_denormalize(const MbfFunction& f, const std::vector<Sign>& signs);

enum class Side { Floor, Ceiling };

// Restricts f to y_var = side and drops that coordinate.
MbfFunction restrict_and_collapse(const MbfFunction& f, int var, Side side);

// f on the y_{n+1}=0 half, g on the y_{n+1}=1 half.
MbfFunction eta(const MbfFunction& f, const MbfFunction& g);
std::pair<MbfFunction, MbfFunction> eta_inverse(const MbfFunction& h);

// Sorted by ascending truth table. Refuses n > max_n.
std::vector<MbfFunction> enumerate_mbf_positive(int n, int max_n = kMaxEnumerationArity);
// Pairs with f implies g, including f = g.
std::vector<std::pair<MbfFunction, MbfFunction>> enumerate_ordered_pairs(int n);
// All chains f_1 <= ... <= f_b over MBF+(n), lexicographic in the sorted order.
std::vector<OrderedTuple> enumerate_ordered_tuples(int n, int b);

}  // namespace mbfreal
