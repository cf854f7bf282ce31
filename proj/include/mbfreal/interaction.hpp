#pragma once

#include "mbfreal/boolean_core.hpp"
#include "mbfreal/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbfreal {

enum class StructureClass { Sigma, PiSigma, SigmaPiSigma };

std::string class_name(StructureClass c);

// Variables are 1-based. A block is a sum of variables, a group is a product of blocks.
using Block = std::vector<int>;
using Group = std::vector<Block>;

// Lambda(z) = sum over groups of the product over blocks of the sum over block variables.
//
// Canonical form: variables sorted inside a block, blocks sorted by minimum,
// groups sorted by minimum, and every group that has a single block merged
// into one sum group. Two structures are equal iff their canonical forms are.
class InteractionStructure {
public:
    InteractionStructure() = default;
    // Throws std::invalid_argument for empty, overlapping or out-of-range input.
    InteractionStructure(int n, std::vector<Group> groups);

    // "(z1+z2)*z3", "z1*z2+z3", "z1z2+z3". n = 0 means the largest index used.
    static InteractionStructure parse(std::string_view text, int n = 0);
    std::string str() const;

    int arity() const { return n_; }
    const std::vector<Group>& groups() const { return groups_; }
    // Tightest class: Sigma for a single block, PiSigma for a single group.
    StructureClass tag() const;
    bool in_class(StructureClass c) const;
    std::uint32_t support() const;
    bool full_support() const { return support() == (1u << n_) - 1; }
    // Largest number of blocks in a group.
    int degree() const;

    // z has one positive entry per variable (index 0 is z_1).
    Rational evaluate(const std::vector<Rational>& z) const;

    bool operator==(const InteractionStructure& o) const { return n_ == o.n_ && groups_ == o.groups_; }

private:
    int n_ = 0;
    std::vector<Group> groups_;
};

// Every structure in the class on n variables, each exactly once.
// Sigma also includes the proper non-empty subsets.
std::vector<InteractionStructure> enumerate_structures(int n, StructureClass c);

// z_var is a factor: the structure is a single group and {var} is one of its blocks.
bool has_factor(const InteractionStructure& s, int var);
// z_var sits in a single-block group, so Lambda = z_var + (rest).
bool has_simple_term(const InteractionStructure& s, int var);

// Per-variable values phi_i(0) = low[i-1], phi_i(1) = high[i-1], with 0 < low < high.
struct PhiAssignment {
    std::vector<Rational> low;
    std::vector<Rational> high;

    static PhiAssignment uniform(int n, const Rational& lo, const Rational& hi);

    int arity() const { return static_cast<int>(low.size()); }
    void validate() const;
    const Rational& value(int var, bool bit) const { return bit ? high[var - 1] : low[var - 1]; }
    std::vector<Rational> values(std::uint32_t corner) const;
    bool operator==(const PhiAssignment&) const = default;
};

// Drops variable var, renumbering later indices down by one.
InteractionStructure remove_variable(const InteractionStructure& s, int var);

struct CollapsedStructure {
    InteractionStructure structure;
    PhiAssignment phi;
    // Lambda(phi(v)) = Lambda'(phi'(collapsed v)) + offset on the chosen side.
    Rational offset;
    // 0: var unused, 1: dropped simple term, 2: dropped factor, 3: dropped from a shared block.
    int rule = 0;
};

// Throws std::invalid_argument when the collapsed structure would be empty.
CollapsedStructure collapse_structure(const InteractionStructure& s, int var, Side side, const PhiAssignment& phi);

}  // namespace mbfreal
