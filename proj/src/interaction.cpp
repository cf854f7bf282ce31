#include "mbfreal/interaction.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace mbfreal {

std::string class_name(StructureClass c) {
    switch (c) {
        case StructureClass::Sigma: return "sigma";
        case StructureClass::PiSigma: return "pisigma";
        case StructureClass::SigmaPiSigma: return "sigmapisigma";
    }
    return "?";
}

InteractionStructure::InteractionStructure(int n, std::vector<Group> groups) : n_(n) {
    if (n < 1 || n > kMaxArity) throw std::invalid_argument("structure arity out of range");
    std::uint32_t seen = 0;
    Block sum_block;
    std::vector<Group> product_groups;
    for (auto& g : groups) {
        Group clean;
        for (auto& b : g) {
            if (b.empty()) continue;
            for (int v : b) {
                if (v < 1 || v > n) throw std::invalid_argument("variable index out of range: z" + std::to_string(v));
                if (seen & (1u << (v - 1))) throw std::invalid_argument("variable used twice: z" + std::to_string(v));
                seen |= 1u << (v - 1);
            }
            std::sort(b.begin(), b.end());
            clean.push_back(b);
        }
        if (clean.empty()) continue;
        if (clean.size() == 1) {
            sum_block.insert(sum_block.end(), clean[0].begin(), clean[0].end());
        } else {
            std::sort(clean.begin(), clean.end(), [](const Block& a, const Block& b) { return a[0] < b[0]; });
            product_groups.push_back(std::move(clean));
        }
    }
    if (!sum_block.empty()) {
        std::sort(sum_block.begin(), sum_block.end());
        product_groups.push_back(Group{sum_block});
    }
    if (product_groups.empty()) throw std::invalid_argument("empty interaction function");
    std::sort(product_groups.begin(), product_groups.end(),
              [](const Group& a, const Group& b) { return a[0][0] < b[0][0]; });
    groups_ = std::move(product_groups);
}

StructureClass InteractionStructure::tag() const {
    if (groups_.size() == 1) return groups_[0].size() == 1 ? StructureClass::Sigma : StructureClass::PiSigma;
    return StructureClass::SigmaPiSigma;
}

bool InteractionStructure::in_class(StructureClass c) const {
    switch (c) {
        case StructureClass::Sigma: return tag() == StructureClass::Sigma;
        case StructureClass::PiSigma: return full_support() && tag() != StructureClass::SigmaPiSigma;
        case StructureClass::SigmaPiSigma: return full_support();
    }
    return false;
}

std::uint32_t InteractionStructure::support() const {
    std::uint32_t m = 0;
    for (const auto& g : groups_)
        for (const auto& b : g)
            for (int v : b) m |= 1u << (v - 1);
    return m;
}

int InteractionStructure::degree() const {
    std::size_t d = 0;
    for (const auto& g : groups_) d = std::max(d, g.size());
    return static_cast<int>(d);
}

Rational InteractionStructure::evaluate(const std::vector<Rational>& z) const {
    if (static_cast<int>(z.size()) != n_) throw ArityMismatch("evaluate: wrong number of values");
    for (const auto& v : z)
        if (sgn(v) <= 0) throw std::invalid_argument("evaluate: values must be positive");
    Rational total = 0;
    for (const auto& g : groups_) {
        Rational prod = 1;
        for (const auto& b : g) {
            Rational sum = 0;
            for (int v : b) sum += z[v - 1];
            prod *= sum;
        }
        total += prod;
    }
    return total;
}

std::string InteractionStructure::str() const {
    std::string out;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        if (gi) out += "+";
        const auto& g = groups_[gi];
        if (g.size() == 1) {
            for (std::size_t k = 0; k < g[0].size(); ++k) {
                if (k) out += "+";
                out += "z" + std::to_string(g[0][k]);
            }
            continue;
        }
        for (std::size_t bi = 0; bi < g.size(); ++bi) {
            if (bi) out += "*";
            const auto& b = g[bi];
            if (b.size() > 1) out += "(";
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (k) out += "+";
                out += "z" + std::to_string(b[k]);
            }
            if (b.size() > 1) out += ")";
        }
    }
    return out;
}

namespace {

// Recursive-descent parser producing sum-of-products-of-sums directly.
class StructureParser {
public:
    explicit StructureParser(std::string_view text) : text_(text) {}

    std::vector<Group> parse_all() {
        auto groups = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return groups;
    }

    int max_index() const { return max_index_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int max_index_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("structure parse error at position " + std::to_string(pos_) + ": " + msg + " in \"" +
                         std::string(text_) + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::vector<Group> parse_sum() {
        std::vector<Group> groups = parse_product();
        while (peek() == '+') {
            ++pos_;
            auto more = parse_product();
            groups.insert(groups.end(), more.begin(), more.end());
        }
        return groups;
    }

    // Returns one group, or several single-block groups when the product is a lone sum.
    std::vector<Group> parse_product() {
        std::vector<std::vector<Group>> factors;
        factors.push_back(parse_factor());
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                factors.push_back(parse_factor());
            } else if (c == 'z' || c == '(') {
                factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        if (factors.size() == 1) return factors[0];
        Group product;
        for (auto& f : factors) {
            if (f.size() == 1) {
                product.insert(product.end(), f[0].begin(), f[0].end());
                continue;
            }
            Block merged;
            for (auto& g : f) {
                if (g.size() != 1) fail("a product factor must be a sum of variables");
                merged.insert(merged.end(), g[0].begin(), g[0].end());
            }
            product.push_back(merged);
        }
        return {product};
    }

    std::vector<Group> parse_factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c != 'z') fail("expected variable or '('");
        ++pos_;
        std::size_t start = pos_;
        int v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxArity) fail("variable index too large");
            ++pos_;
        }
        if (pos_ == start || v == 0) fail("bad variable index");
        max_index_ = std::max(max_index_, v);
        return {Group{Block{v}}};
    }
};

}  // namespace

InteractionStructure InteractionStructure::parse(std::string_view text, int n) {
    StructureParser p(text);
    auto groups = p.parse_all();
    if (n == 0) n = p.max_index();
    if (p.max_index() > n) throw InputError("structure uses a variable beyond arity " + std::to_string(n));
    try {
        return InteractionStructure(n, std::move(groups));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("invalid structure: ") + e.what());
    }
}

namespace {

void partitions_rec(const std::vector<int>& elems, std::size_t i, std::vector<std::vector<int>>& cur,
                    std::vector<std::vector<std::vector<int>>>& out) {
    if (i == elems.size()) {
        out.push_back(cur);
        return;
    }
    for (std::size_t k = 0; k < cur.size(); ++k) {
        cur[k].push_back(elems[i]);
        partitions_rec(elems, i + 1, cur, out);
        cur[k].pop_back();
    }
    cur.push_back({elems[i]});
    partitions_rec(elems, i + 1, cur, out);
    cur.pop_back();
}

std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& elems) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    if (elems.empty()) {
        out.push_back({});
        return out;
    }
    partitions_rec(elems, 0, cur, out);
    return out;
}

std::vector<int> mask_vars(std::uint32_t mask, int n) {
    std::vector<int> v;
    for (int i = 1; i <= n; ++i)
        if (mask & (1u << (i - 1))) v.push_back(i);
    return v;
}

}  // namespace

std::vector<InteractionStructure> enumerate_structures(int n, StructureClass c) {
    if (n < 1 || n > 6) throw ArityMismatch("structure enumeration arity out of range");
    std::vector<InteractionStructure> out;
    std::uint32_t full = (1u << n) - 1;
    if (c == StructureClass::Sigma) {
        for (std::uint32_t m = 1; m <= full; ++m) out.emplace_back(n, std::vector<Group>{Group{mask_vars(m, n)}});
        return out;
    }
    if (c == StructureClass::PiSigma) {
        for (auto& p : set_partitions(mask_vars(full, n))) out.emplace_back(n, std::vector<Group>{Group(p)});
        return out;
    }
    std::set<std::string> seen;
    for (std::uint32_t sum_mask = 0; sum_mask <= full; ++sum_mask) {
        auto rest = mask_vars(full & ~sum_mask, n);
        for (auto& grouping : set_partitions(rest)) {
            bool ok = true;
            for (auto& g : grouping)
                if (g.size() < 2) ok = false;
            if (!ok) continue;
            // Each group splits into at least two blocks.
            std::vector<std::vector<Group>> choices;
            for (auto& g : grouping) {
                std::vector<Group> opts;
                for (auto& p : set_partitions(g))
                    if (p.size() >= 2) opts.push_back(Group(p));
                choices.push_back(std::move(opts));
            }
            std::vector<std::size_t> idx(choices.size(), 0);
            for (;;) {
                std::vector<Group> groups;
                if (sum_mask) groups.push_back(Group{mask_vars(sum_mask, n)});
                for (std::size_t k = 0; k < choices.size(); ++k) groups.push_back(choices[k][idx[k]]);
                InteractionStructure s(n, groups);
                if (seen.insert(s.str()).second) out.push_back(s);
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const InteractionStructure& a, const InteractionStructure& b) {
        if (a.groups().size() != b.groups().size()) return a.groups().size() < b.groups().size();
        return a.str() < b.str();
    });
    return out;
}

bool has_factor(const InteractionStructure& s, int var) {
    if (s.groups().size() != 1) return false;
    for (const auto& b : s.groups()[0])
        if (b.size() == 1 && b[0] == var) return true;
    return false;
}

bool has_simple_term(const InteractionStructure& s, int var) {
    for (const auto& g : s.groups())
        if (g.size() == 1 && std::find(g[0].begin(), g[0].end(), var) != g[0].end()) return true;
    return false;
}

PhiAssignment PhiAssignment::uniform(int n, const Rational& lo, const Rational& hi) {
    return PhiAssignment{std::vector<Rational>(n, lo), std::vector<Rational>(n, hi)};
}

void PhiAssignment::validate() const {
    if (low.size() != high.size()) throw ArityMismatch("phi: low and high differ in length");
    for (std::size_t i = 0; i < low.size(); ++i) {
        if (!(low[i] > 0)) throw std::invalid_argument("phi: low value must be positive");
        if (!(low[i] < high[i])) throw std::invalid_argument("phi: low must be below high");
    }
}

std::vector<Rational> PhiAssignment::values(std::uint32_t corner) const {
    std::vector<Rational> z(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) z[i] = ((corner >> i) & 1u) ? high[i] : low[i];
    return z;
}

namespace {

int renumber(int v, int dropped) { return v > dropped ? v - 1 : v; }

std::vector<Group> renumbered_without(const std::vector<Group>& groups, int var) {
    std::vector<Group> out;
    for (const auto& g : groups) {
        Group ng;
        for (const auto& b : g) {
            Block nb;
            for (int v : b)
                if (v != var) nb.push_back(renumber(v, var));
            if (!nb.empty()) ng.push_back(nb);
        }
        if (!ng.empty()) out.push_back(ng);
    }
    return out;
}

PhiAssignment phi_without(const PhiAssignment& phi, int var) {
    PhiAssignment out;
    for (int i = 1; i <= phi.arity(); ++i) {
        if (i == var) continue;
        out.low.push_back(phi.low[i - 1]);
        out.high.push_back(phi.high[i - 1]);
    }
    return out;
}

}  // namespace

InteractionStructure remove_variable(const InteractionStructure& s, int var) {
    if (var < 1 || var > s.arity() || s.arity() < 2) throw ArityMismatch("remove_variable: bad direction");
    auto groups = renumbered_without(s.groups(), var);
    if (groups.empty()) throw std::invalid_argument("empty interaction function");
    return InteractionStructure(s.arity() - 1, groups);
}

CollapsedStructure collapse_structure(const InteractionStructure& s, int var, Side side, const PhiAssignment& phi) {
    int n = s.arity();
    if (n < 2 || var < 1 || var > n) throw ArityMismatch("collapse_structure: bad direction");
    if (phi.arity() != n) throw ArityMismatch("collapse_structure: phi arity");
    CollapsedStructure out;
    out.offset = 0;
    Rational fixed = phi.value(var, side == Side::Ceiling);
    PhiAssignment new_phi = phi;

    const auto& groups = s.groups();
    int gi = -1, bi = -1;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t b = 0; b < groups[g].size(); ++b)
            if (std::find(groups[g][b].begin(), groups[g][b].end(), var) != groups[g][b].end()) {
                gi = static_cast<int>(g);
                bi = static_cast<int>(b);
            }

    if (gi < 0) {
        out.rule = 0;
    } else {
        const Group& g = groups[gi];
        const Block& b = g[bi];
        if (b.size() == 1 && g.size() == 1) {
            out.rule = 1;
            out.offset = fixed;
        } else if (b.size() == 1) {
            out.rule = 2;
            // Sibling block with the smallest minimum absorbs the constant factor.
            const Block& sibling = (bi == 0) ? g[1] : g[0];
            for (int v : sibling) {
                new_phi.low[v - 1] *= fixed;
                new_phi.high[v - 1] *= fixed;
            }
        } else {
            out.rule = 3;
            int t = (b[0] == var) ? b[1] : b[0];
            new_phi.low[t - 1] += fixed;
            new_phi.high[t - 1] += fixed;
        }
    }
    auto new_groups = renumbered_without(groups, var);
    if (new_groups.empty()) throw std::invalid_argument("collapse leaves an empty interaction function");
    out.structure = InteractionStructure(n - 1, new_groups);
    out.phi = phi_without(new_phi, var);
    return out;
}

}  // namespace mbfreal
