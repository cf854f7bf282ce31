#pragma once

#include "mbfreal/boolean_core.hpp"
#include "mbfreal/interaction.hpp"
#include "mbfreal/linear.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mbfreal {

enum class RealizationClass { K, Sigma, PiSigma, SigmaPiSigma };

std::string class_name(RealizationClass c);
// Accepts "K", "sigma", "pisigma", "sigmapisigma" (case-insensitive).
RealizationClass parse_realization_class(const std::string& text);
std::optional<StructureClass> structure_class(RealizationClass c);

// Lambda, phi and thresholds theta_1 > ... > theta_k for f_1 < ... < f_k.
struct Witness {
    InteractionStructure structure;
    PhiAssignment phi;
    std::vector<Rational> thresholds;
};

// Target values R(y) over all corners and thresholds theta_1 > ... > theta_k.
struct KWitness {
    int n = 0;
    std::vector<Rational> values;
    std::vector<Rational> thresholds;
};

// Replayable evidence that a tuple has no realization of some kind.
struct Certificate {
    enum class Kind { Direction, Farkas, Collapse, Exhaustion };
    Kind kind = Kind::Direction;

    // Structure refuted. For Exhaustion it is unset.
    std::optional<InteractionStructure> structure;

    // Direction: positions of the refuted pair in the tuple, the direction,
    // and corners y, w with y_l = w_l = 0, f_second(y) = 0, f_first(y + e_l) = 1,
    // f_second(w) = 1, f_first(w + e_l) = 0.
    std::size_t first = 0;
    std::size_t second = 1;
    int direction = 0;
    std::uint32_t y = 0;
    std::uint32_t w = 0;

    // Farkas: rows of the regenerated system and their positive multipliers.
    // Linear refutes a Sigma structure over its support, monomial refutes any structure.
    bool monomial = false;
    std::vector<std::size_t> rows;
    std::vector<Rational> multipliers;
    std::vector<std::string> labels;

    // Collapse: direction and side; children[0] refutes the collapsed structure on the collapsed tuple.
    Side side = Side::Floor;

    // Exhaustion: one child per structure of the class.
    StructureClass cls = StructureClass::Sigma;
    std::vector<Certificate> children;
};

struct Verdict {
    enum class Kind { Realizable, NotRealizable, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Witness> witness;
    std::optional<KWitness> k_witness;
    std::optional<Certificate> certificate;
    std::string diagnostics;
};

std::string verdict_name(Verdict::Kind k);

// Throws InvalidWitness when a corner value equals a threshold.
bool verify_witness(const OrderedTuple& tuple, const Witness& w);
bool verify_k_witness(const OrderedTuple& tuple, const KWitness& w);

// R = f_1 + ... + f_b, theta_j = b - j + 1/2.
KWitness realize_k(const OrderedTuple& tuple);

// Linear system for Sigma over the variables in mask: l_i, u_i per variable, then the thresholds.
std::vector<LinearConstraint> sigma_system(const OrderedTuple& tuple, std::uint32_t mask,
                                           std::vector<std::string>* labels = nullptr);

// Exact decision for the Sigma class.
Verdict check_sigma(const OrderedTuple& tuple);

// Directions l where the ceiling collapse of f and the floor collapse of g are incomparable.
std::vector<int> incomparable_directions(const MbfFunction& f, const MbfFunction& g);

// Fires when some pair of the tuple has an incomparable direction that is a factor or simple term of s.
std::optional<Certificate> necessary_condition(const OrderedTuple& tuple, const InteractionStructure& s);

// Sparse multilinear polynomial in l_i, u_i: a monomial is (l mask, u mask).
using Monomial = std::pair<std::uint32_t, std::uint32_t>;
using Polynomial = std::vector<std::pair<Monomial, Rational>>;

struct PolynomialSystem {
    std::vector<Polynomial> rows;  // each row must be strictly positive
    std::vector<std::string> labels;
};

PolynomialSystem monomial_system(const OrderedTuple& tuple, const InteractionStructure& s);

// Positive combination of the strict polynomial constraints that vanishes identically.
std::optional<Certificate> monomial_certificate(const OrderedTuple& tuple, const InteractionStructure& s);

std::vector<Rational> default_grid();

// Grid search with phi(0) = 1 and phi(1) on the grid; thresholds come from the separating gaps.
std::optional<Witness> search_witness(const OrderedTuple& tuple, const InteractionStructure& s,
                                      const std::vector<Rational>& grid = default_grid());

// Refutes s by collapsing one direction and refuting the collapsed structure.
std::optional<Certificate> collapse_prune(const OrderedTuple& tuple, const InteractionStructure& s);

struct CheckOptions {
    std::vector<Rational> grid = default_grid();
    // Collapse pruning is tried from this arity upward.
    int collapse_from_arity = 4;
};

Verdict check_class(const OrderedTuple& tuple, RealizationClass cls, const CheckOptions& options = {});

// Replays a certificate against the tuple from scratch.
bool verify_certificate(const OrderedTuple& tuple, const Certificate& cert);

// Witness for eta(f, g) from a witness for (f, g).
Witness lift_eta(const MbfFunction& f, const MbfFunction& g, const Witness& w, StructureClass cls);

// Pair (floor, ceiling) in direction var and its witness, from a witness for h.
// z_var must be a factor or a simple term of the structure. var = 0 means the last variable.
std::pair<OrderedTuple, Witness> lower_eta(const MbfFunction& h, const Witness& w, int var = 0);

std::pair<OrderedTuple, Witness> collapse_witness(const OrderedTuple& tuple, const Witness& w, int var, Side side);

// Threshold structure: f(y) = 1 iff sum a_i y_i > theta.
struct SeparatingStructure {
    std::vector<Rational> weights;
    Rational theta;
};

bool separates(const MbfFunction& f, const SeparatingStructure& sep);
// From a single-threshold Sigma witness.
SeparatingStructure sigma_threshold_convert(const Witness& w);
// Requires a_i >= 0 and theta > -n.
Witness sigma_threshold_inverse(const MbfFunction& f, const SeparatingStructure& sep);

}  // namespace mbfreal
