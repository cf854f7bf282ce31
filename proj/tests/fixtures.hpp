#pragma once

#include "mbfreal/realizability.hpp"

#include <array>
#include <string>
#include <vector>

namespace fixtures {

using namespace mbfreal;

inline MbfFunction fn(int n, std::vector<std::string> corners) { return MbfFunction::from_true_corners(n, corners); }

inline OrderedTuple pisigma_pair() {
    return {fn(3, {"101", "011", "111"}), fn(3, {"100", "010", "110", "101", "011", "111"})};
}

inline OrderedTuple sps_pair() { return {fn(3, {"110", "111"}), fn(3, {"001", "101", "011", "110", "111"})}; }

inline OrderedTuple k_only_pair() {
    return {fn(4, {"1100", "1110", "1101", "0111", "1111"}),
            fn(4, {"1100", "1110", "1101", "0111", "1111", "0010", "1010", "0110", "1001", "0011", "1011"})};
}

inline Rational q(const char* s) { return parse_rational(s); }

inline Witness witness(int n, const std::string& structure, std::vector<Rational> high, std::vector<Rational> thresholds) {
    Witness w;
    w.structure = InteractionStructure::parse(structure, n);
    w.phi.low.assign(n, Rational(1));
    w.phi.high = std::move(high);
    w.thresholds = std::move(thresholds);
    return w;
}

// Column order of the printed table; each cell is f(y) g(y).
inline const std::array<const char*, 8> kTableColumns = {"000", "001", "010", "100", "110", "101", "011", "111"};

struct ProblemRow {
    std::array<const char*, 8> cells;
    std::vector<int> directions;
};

inline const std::vector<ProblemRow>& problem_rows() {
    static const std::vector<ProblemRow> rows = {
        {{"00", "01", "00", "01", "11", "01", "01", "11"}, {1}},
        {{"00", "00", "01", "01", "01", "01", "11", "11"}, {2}},
        {{"00", "01", "01", "00", "01", "11", "01", "11"}, {3}},
        {{"00", "01", "01", "00", "11", "01", "01", "11"}, {2}},
        {{"00", "01", "00", "01", "01", "01", "11", "11"}, {3}},
        {{"00", "00", "01", "01", "01", "11", "01", "11"}, {1}},
        {{"00", "01", "00", "00", "11", "01", "01", "11"}, {1, 2}},
        {{"00", "00", "00", "01", "01", "01", "11", "11"}, {2, 3}},
        {{"00", "00", "01", "00", "01", "11", "01", "11"}, {1, 3}},
        {{"00", "01", "00", "01", "11", "01", "11", "11"}, {1, 3}},
        {{"00", "00", "01", "01", "01", "11", "11", "11"}, {1, 2}},
        {{"00", "01", "01", "00", "11", "11", "01", "11"}, {2, 3}},
        {{"00", "01", "00", "00", "11", "01", "11", "11"}, {1}},
        {{"00", "00", "00", "01", "01", "11", "11", "11"}, {2}},
        {{"00", "00", "01", "00", "11", "11", "01", "11"}, {3}},
        {{"00", "00", "00", "01", "11", "01", "11", "11"}, {1}},
        {{"00", "00", "01", "00", "01", "11", "11", "11"}, {2}},
        {{"00", "01", "00", "00", "11", "11", "01", "11"}, {3}},
    };
    return rows;
}

inline OrderedTuple problem_pair(const ProblemRow& row) {
    std::vector<std::string> f, g;
    for (int c = 0; c < 8; ++c) {
        if (row.cells[c][0] == '1') f.push_back(kTableColumns[c]);
        if (row.cells[c][1] == '1') g.push_back(kTableColumns[c]);
    }
    return {fn(3, f), fn(3, g)};
}

struct RealizingRow {
    const char* structure;
    std::array<int, 3> high;
    const char* theta_g;
    const char* theta_f;
};

inline const std::vector<RealizingRow>& realizing_rows() {
    static const std::vector<RealizingRow> rows = {
        {"z1z2+z3", {3, 2, 3}, "3.5", "6.5"},   {"z1+z2z3", {3, 3, 2}, "3.5", "6.5"},
        {"z2+z1z3", {2, 3, 3}, "3.5", "6.5"},   {"z1z2+z3", {2, 3, 3}, "3.5", "6.5"},
        {"z1+z2z3", {3, 2, 3}, "3.5", "6.5"},   {"z2+z1z3", {3, 3, 2}, "3.5", "6.5"},
        {"z1z2+z3", {3, 3, 4}, "4.5", "8"},     {"z1+z2z3", {4, 3, 3}, "4.5", "8"},
        {"z2+z1z3", {3, 4, 3}, "4.5", "8"},     {"z2(z1+z3)", {4, 2, 4}, "4.5", "9"},
        {"z3(z1+z2)", {4, 4, 2}, "4.5", "9"},   {"z1(z2+z3)", {2, 4, 4}, "4.5", "9"},
        {"z1z2+z3", {2, 3, 4}, "4.5", "6.5"},   {"z1+z2z3", {4, 2, 3}, "4.5", "6.5"},
        {"z2+z1z3", {3, 4, 2}, "4.5", "6.5"},   {"z2(z1+z3)", {4, 2, 3}, "4.5", "7.5"},
        {"z3(z1+z2)", {3, 4, 2}, "4.5", "7.5"}, {"z1(z2+z3)", {2, 3, 4}, "4.5", "7.5"},
    };
    return rows;
}

inline Witness realizing_witness(const RealizingRow& row) {
    return witness(3, row.structure, {Rational(row.high[0]), Rational(row.high[1]), Rational(row.high[2])},
                   {q(row.theta_f), q(row.theta_g)});
}

inline std::string data_path(const std::string& name) { return std::string(MBFREAL_TEST_DATA) + "/" + name; }

}  // namespace fixtures
