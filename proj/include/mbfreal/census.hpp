#pragma once

#include "mbfreal/realizability.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mbfreal {

struct CensusOptions {
    int n = 3;
    std::vector<RealizationClass> classes;
    std::string out_dir;
    int jobs = 1;
    CheckOptions check;
};

struct CensusRow {
    std::size_t pair_index = 0;
    std::string f_hex;
    std::string g_hex;
    RealizationClass cls = RealizationClass::K;
    Verdict::Kind verdict = Verdict::Kind::Unknown;
    std::string witness_path;
    std::string certificate_path;
};

struct CensusReport {
    int n = 0;
    std::vector<CensusRow> rows;
    // Realizable, not realizable, unknown.
    std::map<RealizationClass, std::array<std::size_t, 3>> counts;
    std::size_t resumed = 0;
    std::size_t computed = 0;
};

inline constexpr const char* kCensusHeader =
    "pair_index,f_hex,g_hex,class,verdict,witness_path,certificate_path";

// Checks every ordered pair of MBF+(n) against each class. Each finished pair is
// recorded on disk, so an interrupted run resumes where it stopped. Throws
// StateError when out_dir holds a census with different parameters.
CensusReport run_census(const CensusOptions& options);

std::string census_csv(const CensusReport& report);
std::string census_summary(const CensusReport& report);

}  // namespace mbfreal
