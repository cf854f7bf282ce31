#include "mbfreal/boolean_core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace mbfreal {

namespace {

void check_arity(int n) {
    if (n < 0 || n > kMaxArity) throw ArityMismatch("arity out of range: " + std::to_string(n));
}

int hex_digits(int n) { return std::max(1, (1 << n) / 4); }

}  // namespace

Corner Corner::parse(std::string_view text) {
    Corner c;
    c.n = static_cast<int>(text.size());
    if (c.n < 1 || c.n > kMaxArity) throw InputError("bad corner: " + std::string(text));
    for (int i = 0; i < c.n; ++i) {
        if (text[i] == '1')
            c.index |= 1u << i;
        else if (text[i] != '0')
            throw InputError("bad corner: " + std::string(text));
    }
    return c;
}

std::string Corner::str() const {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((index >> i) & 1u) s[i] = '1';
    return s;
}

std::uint32_t insert_bit(std::uint32_t index, int var, bool value) {
    std::uint32_t low_mask = (1u << (var - 1)) - 1;
    std::uint32_t low = index & low_mask;
    std::uint32_t high = (index & ~low_mask) << 1;
    return high | low | (value ? 1u << (var - 1) : 0u);
}

std::uint32_t remove_bit(std::uint32_t index, int var) {
    std::uint32_t low_mask = (1u << (var - 1)) - 1;
    return (index & low_mask) | ((index >> 1) & ~low_mask);
}

int TruthTable::popcount() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool is_monotone_positive(int n, const TruthTable& table) {
    std::uint32_t size = 1u << n;
    for (std::uint32_t c = 0; c < size; ++c) {
        if (!table.test(c)) continue;
        for (int i = 0; i < n; ++i)
            if (!table.test(c | (1u << i))) return false;
    }
    return true;
}

bool is_sign_monotone(int n, const TruthTable& table, const std::vector<Sign>& signs) {
    if (static_cast<int>(signs.size()) != n) throw ArityMismatch("sign vector length");
    std::uint32_t size = 1u << n;
    for (std::uint32_t c = 0; c < size; ++c) {
        for (int i = 0; i < n; ++i) {
            if ((c >> i) & 1u) continue;
            bool lo = table.test(c), hi = table.test(c | (1u << i));
            if (signs[i] == Sign::Plus ? (lo && !hi) : (hi && !lo)) return false;
        }
    }
    return true;
}

MbfFunction::MbfFunction(int n, const TruthTable& table) : n_(n), table_(table) {
    check_arity(n);
    std::uint32_t size = 1u << n;
    for (std::uint32_t c = size; c < 256; ++c)
        if (table.test(c)) throw std::invalid_argument("truth table has bits beyond 2^n");
    if (!is_monotone_positive(n, table)) throw NotMonotone("function is not positive monotone");
}

MbfFunction MbfFunction::constant(int n, bool value) {
    check_arity(n);
    TruthTable t;
    if (value)
        for (std::uint32_t c = 0; c < (1u << n); ++c) t.set(c);
    return MbfFunction(n, t);
}

MbfFunction MbfFunction::from_true_corners(int n, const std::vector<std::string>& corners) {
    TruthTable t;
    for (const auto& s : corners) {
        Corner c = Corner::parse(s);
        if (c.n != n) throw ArityMismatch("corner arity differs: " + s);
        t.set(c.index);
    }
    return MbfFunction(n, t);
}

MbfFunction MbfFunction::from_hex(std::string_view text) {
    if (text.substr(0, 4) != "mbf:") throw InputError("expected mbf:<n>:<hex>, got " + std::string(text));
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos || colon == 0) throw InputError("malformed function: " + std::string(text));
    int n = 0;
    for (char ch : rest.substr(0, colon)) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw InputError("malformed arity: " + std::string(text));
        n = n * 10 + (ch - '0');
        if (n > kMaxArity) throw InputError("arity too large: " + std::string(text));
    }
    auto hex = rest.substr(colon + 1);
    int digits = hex_digits(n);
    if (static_cast<int>(hex.size()) != digits)
        throw InputError("wrong hex length for arity " + std::to_string(n) + ": " + std::string(text));
    TruthTable t;
    std::uint32_t size = 1u << n;
    for (int k = 0; k < digits; ++k) {
        char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
        int v;
        if (ch >= '0' && ch <= '9')
            v = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            v = ch - 'a' + 10;
        else
            throw InputError("bad hex digit in " + std::string(text));
        int base = 4 * (digits - 1 - k);
        for (int b = 0; b < 4; ++b) {
            if (!((v >> b) & 1)) continue;
            std::uint32_t bit = static_cast<std::uint32_t>(base + b);
            if (bit >= size) throw InputError("hex sets bits beyond 2^n: " + std::string(text));
            t.set(bit);
        }
    }
    try {
        return MbfFunction(n, t);
    } catch (const NotMonotone&) {
        throw InputError("function is not positive monotone: " + std::string(text));
    }
}

std::vector<std::uint32_t> MbfFunction::true_corners() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < corner_count(); ++c)
        if (table_.test(c)) out.push_back(c);
    return out;
}

std::vector<std::uint32_t> MbfFunction::false_corners() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < corner_count(); ++c)
        if (!table_.test(c)) out.push_back(c);
    return out;
}

std::string MbfFunction::to_hex() const {
    static const char* digits_str = "0123456789abcdef";
    int digits = hex_digits(n_);
    std::string out = "mbf:" + std::to_string(n_) + ":";
    for (int k = 0; k < digits; ++k) {
        int base = 4 * (digits - 1 - k);
        int v = 0;
        for (int b = 0; b < 4; ++b)
            if (base + b < 256 && table_.test(static_cast<std::uint32_t>(base + b))) v |= 1 << b;
        out += digits_str[v];
    }
    return out;
}

std::string MbfFunction::corners_str() const {
    std::string out = "{";
    bool first = true;
    for (auto c : true_corners()) {
        if (!first) out += ",";
        first = false;
        out += Corner{n_, c}.str();
    }
    return out + "}";
}

bool implies(const MbfFunction& f, const MbfFunction& g) {
    if (f.arity() != g.arity()) throw ArityMismatch("implies: arities differ");
    return f.table().subset_of(g.table());
}

bool strictly_precedes(const MbfFunction& f, const MbfFunction& g) { return implies(f, g) && f != g; }

void validate_tuple(const OrderedTuple& tuple) {
    for (std::size_t j = 1; j < tuple.size(); ++j) {
        if (tuple[j].arity() != tuple[0].arity()) throw ArityMismatch("tuple arities differ");
        if (!implies(tuple[j - 1], tuple[j]))
            throw std::invalid_argument("tuple is not ordered at position " + std::to_string(j));
    }
}

namespace {

std::uint32_t sign_mask(const std::vector<Sign>& signs) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] == Sign::Minus) m |= 1u << i;
    return m;
}

}  // namespace

MbfFunction beta_normalize(const BooleanFunction& raw, const std::vector<Sign>& signs) {
    check_arity(raw.n);
    if (static_cast<int>(signs.size()) != raw.n) throw ArityMismatch("sign vector length");
    if (!is_sign_monotone(raw.n, raw.table, signs)) throw NotMonotone("raw function is not monotone in the given signs");
    std::uint32_t m = sign_mask(signs);
    TruthTable t;
    for (std::uint32_t c = 0; c < (1u << raw.n); ++c)
        if (raw.table.test(c ^ m)) t.set(c);
    return MbfFunction(raw.n, t);
}

BooleanFunction beta_denormalize(const MbfFunction& f, const std::vector<Sign>& signs) {
    if (static_cast<int>(signs.size()) != f.arity()) throw ArityMismatch("sign vector length");
    std::uint32_t m = sign_mask(signs);
    BooleanFunction raw{f.arity(), {}};
    for (std::uint32_t c = 0; c < f.corner_count(); ++c)
        if (f(c ^ m)) raw.table.set(c);
    return raw;
}

MbfFunction restrict_and_collapse(const MbfFunction& f, int var, Side side) {
    int n = f.arity();
    if (n < 1 || var < 1 || var > n) throw ArityMismatch("collapse direction out of range");
    TruthTable t;
    for (std::uint32_t c = 0; c < (1u << (n - 1)); ++c)
        if (f(insert_bit(c, var, side == Side::Ceiling))) t.set(c);
    return MbfFunction(n - 1, t);
}

MbfFunction eta(const MbfFunction& f, const MbfFunction& g) {
    if (f.arity() != g.arity()) throw ArityMismatch("eta: arities differ");
    if (!implies(f, g)) throw std::invalid_argument("eta: f does not imply g");
    int n = f.arity();
    if (n + 1 > kMaxArity) throw ArityMismatch("eta: result arity too large");
    std::uint32_t half = 1u << n;
    TruthTable t;
    for (std::uint32_t c = 0; c < half; ++c) {
        if (f(c)) t.set(c);
        if (g(c)) t.set(c + half);
    }
    return MbfFunction(n + 1, t);
}

std::pair<MbfFunction, MbfFunction> eta_inverse(const MbfFunction& h) {
    if (h.arity() < 1) throw ArityMismatch("eta_inverse: arity 0");
    int n = h.arity();
    return {restrict_and_collapse(h, n, Side::Floor), restrict_and_collapse(h, n, Side::Ceiling)};
}

std::vector<MbfFunction> enumerate_mbf_positive(int n, int max_n) {
    if (n < 0 || n > max_n) throw ArityMismatch("enumeration arity out of range: " + std::to_string(n));
    std::vector<MbfFunction> level{MbfFunction::constant(0, false), MbfFunction::constant(0, true)};
    for (int m = 0; m < n; ++m) {
        std::vector<MbfFunction> next;
        for (const auto& f : level)
            for (const auto& g : level)
                if (implies(f, g)) next.push_back(eta(f, g));
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return level;
}

std::vector<std::pair<MbfFunction, MbfFunction>> enumerate_ordered_pairs(int n) {
    auto all = enumerate_mbf_positive(n);
    std::vector<std::pair<MbfFunction, MbfFunction>> out;
    for (const auto& f : all)
        for (const auto& g : all)
            if (implies(f, g)) out.emplace_back(f, g);
    return out;
}

namespace {

void extend_chains(const std::vector<MbfFunction>& all, int b, OrderedTuple& cur, std::vector<OrderedTuple>& out) {
    if (static_cast<int>(cur.size()) == b) {
        out.push_back(cur);
        return;
    }
    for (const auto& f : all) {
        if (!cur.empty() && !implies(cur.back(), f)) continue;
        cur.push_back(f);
        extend_chains(all, b, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<OrderedTuple> enumerate_ordered_tuples(int n, int b) {
    if (b < 0) throw std::invalid_argument("negative tuple length");
    auto all = enumerate_mbf_positive(n);
    std::vector<OrderedTuple> out;
    OrderedTuple cur;
    extend_chains(all, b, cur, out);
    return out;
}

}  // namespace mbfreal
