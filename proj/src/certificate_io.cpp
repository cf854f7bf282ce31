#include "mbfreal/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace mbfreal {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string write_witness_file(const WitnessFile& file) {
    std::ostringstream out;
    int n = file.tuple.empty() ? 0 : file.tuple[0].arity();
    out << "# realization witness\n";
    out << "class = " << class_name(file.cls) << "\n";
    out << "n = " << n << "\n";
    out << "tuple =";
    for (const auto& f : file.tuple) out << " " << f.to_hex();
    out << "\n";
    if (file.witness) {
        const auto& w = *file.witness;
        out << "structure = " << w.structure.str() << "\n";
        out << "low = " << format_rationals(w.phi.low) << "\n";
        out << "high = " << format_rationals(w.phi.high) << "\n";
        out << "thresholds = " << format_rationals(w.thresholds) << "\n";
    }
    if (file.k_witness) {
        out << "values = " << format_rationals(file.k_witness->values) << "\n";
        out << "thresholds = " << format_rationals(file.k_witness->thresholds) << "\n";
    }
    return out.str();
}

WitnessFile read_witness_file(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError("witness line " + std::to_string(lineno) + ": missing '='");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw InputError("witness file lacks key '" + key + "'");
        return it->second;
    };
    WitnessFile file;
    file.cls = parse_realization_class(need("class"));
    int n;
    try {
        n = std::stoi(need("n"));
    } catch (const std::logic_error&) {
        throw InputError("witness file: bad arity");
    }
    for (const auto& tok : split_ws(need("tuple"))) file.tuple.push_back(MbfFunction::from_hex(tok));
    if (file.tuple.empty()) throw InputError("witness file: empty tuple");
    for (const auto& f : file.tuple)
        if (f.arity() != n) throw InputError("witness file: tuple arity differs from n");
    try {
        validate_tuple(file.tuple);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("witness file: ") + e.what());
    }
    if (file.cls == RealizationClass::K) {
        KWitness k;
        k.n = n;
        k.values = parse_rationals(need("values"));
        k.thresholds = parse_rationals(need("thresholds"));
        file.k_witness = std::move(k);
        return file;
    }
    Witness w;
    w.structure = InteractionStructure::parse(need("structure"), n);
    w.phi.low = parse_rationals(need("low"));
    w.phi.high = parse_rationals(need("high"));
    w.thresholds = parse_rationals(need("thresholds"));
    if (w.phi.low.size() != static_cast<std::size_t>(n) || w.phi.high.size() != static_cast<std::size_t>(n))
        throw InputError("witness file: phi needs one value per variable");
    if (w.thresholds.size() != file.tuple.size()) throw InputError("witness file: one threshold per function");
    file.witness = std::move(w);
    return file;
}

namespace {

std::string side_name(Side s) { return s == Side::Floor ? "floor" : "ceiling"; }

StructureClass parse_structure_class(const std::string& s) {
    auto rc = parse_realization_class(s);
    auto sc = structure_class(rc);
    if (!sc) throw InputError("certificate: class K has no structures");
    return *sc;
}

}  // namespace

nlohmann::json certificate_to_json(const Certificate& cert) {
    nlohmann::json j;
    if (cert.structure) j["structure"] = cert.structure->str();
    switch (cert.kind) {
        case Certificate::Kind::Direction: {
            int n = cert.structure ? cert.structure->arity() : 0;
            j["kind"] = "direction";
            j["first"] = cert.first;
            j["second"] = cert.second;
            j["direction"] = cert.direction;
            j["y"] = Corner{n, cert.y}.str();
            j["w"] = Corner{n, cert.w}.str();
            break;
        }
        case Certificate::Kind::Farkas: {
            j["kind"] = "farkas";
            j["system"] = cert.monomial ? "monomial" : "linear";
            j["rows"] = cert.rows;
            std::vector<std::string> m;
            for (const auto& q : cert.multipliers) m.push_back(format_rational(q));
            j["multipliers"] = m;
            j["labels"] = cert.labels;
            break;
        }
        case Certificate::Kind::Collapse:
            j["kind"] = "collapse";
            j["direction"] = cert.direction;
            j["side"] = side_name(cert.side);
            j["child"] = certificate_to_json(cert.children.at(0));
            break;
        case Certificate::Kind::Exhaustion: {
            j["kind"] = "exhaustion";
            j["class"] = class_name(cert.cls);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : cert.children) arr.push_back(certificate_to_json(c));
            j["children"] = arr;
            break;
        }
    }
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j, int n) {
    try {
        Certificate c;
        if (j.contains("structure")) c.structure = InteractionStructure::parse(j.at("structure").get<std::string>(), n);
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "direction") {
            c.kind = Certificate::Kind::Direction;
            c.first = j.at("first").get<std::size_t>();
            c.second = j.at("second").get<std::size_t>();
            c.direction = j.at("direction").get<int>();
            c.y = Corner::parse(j.at("y").get<std::string>()).index;
            c.w = Corner::parse(j.at("w").get<std::string>()).index;
        } else if (kind == "farkas") {
            c.kind = Certificate::Kind::Farkas;
            c.monomial = j.at("system").get<std::string>() == "monomial";
            c.rows = j.at("rows").get<std::vector<std::size_t>>();
            for (const auto& s : j.at("multipliers")) c.multipliers.push_back(parse_rational(s.get<std::string>()));
            if (j.contains("labels")) c.labels = j.at("labels").get<std::vector<std::string>>();
        } else if (kind == "collapse") {
            c.kind = Certificate::Kind::Collapse;
            c.direction = j.at("direction").get<int>();
            std::string side = j.at("side").get<std::string>();
            if (side != "floor" && side != "ceiling") throw InputError("certificate: bad side");
            c.side = side == "floor" ? Side::Floor : Side::Ceiling;
            c.children.push_back(certificate_from_json(j.at("child"), n - 1));
        } else if (kind == "exhaustion") {
            c.kind = Certificate::Kind::Exhaustion;
            c.cls = parse_structure_class(j.at("class").get<std::string>());
            for (const auto& child : j.at("children")) c.children.push_back(certificate_from_json(child, n));
        } else {
            throw InputError("certificate: unknown kind " + kind);
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("certificate: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StateError("cannot write " + path);
    out << content;
    if (!out) throw StateError("write failed for " + path);
}

}  // namespace mbfreal
