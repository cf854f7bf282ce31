#pragma once

#include "mbfreal/realizability.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace mbfreal {

// Key-value witness file. Holds either a structure witness or a K witness.
struct WitnessFile {
    RealizationClass cls = RealizationClass::Sigma;
    OrderedTuple tuple;
    std::optional<Witness> witness;
    std::optional<KWitness> k_witness;
};

std::string write_witness_file(const WitnessFile& file);
// Throws InputError on malformed content.
WitnessFile read_witness_file(std::string_view text);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mbfreal
