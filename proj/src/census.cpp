#include "mbfreal/census.hpp"

#include "mbfreal/io.hpp"

#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace mbfreal {

namespace {

Verdict::Kind parse_verdict(const std::string& s) {
    if (s == "Realizable") return Verdict::Kind::Realizable;
    if (s == "NotRealizable") return Verdict::Kind::NotRealizable;
    if (s == "Unknown") return Verdict::Kind::Unknown;
    throw StateError("census record has unknown verdict " + s);
}

std::size_t kind_slot(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Realizable: return 0;
        case Verdict::Kind::NotRealizable: return 1;
        case Verdict::Kind::Unknown: return 2;
    }
    return 2;
}

nlohmann::json config_json(const CensusOptions& o) {
    nlohmann::json j;
    j["n"] = o.n;
    std::vector<std::string> cls;
    for (auto c : o.classes) cls.push_back(class_name(c));
    j["classes"] = cls;
    return j;
}

// Written to a temporary name first so a killed run never leaves a partial record.
void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    write_text_file(tmp.string(), content);
    fs::rename(tmp, path);
}

}  // namespace

CensusReport run_census(const CensusOptions& options) {
    if (options.classes.empty()) throw InputError("census needs at least one class");
    if (options.jobs < 1) throw InputError("jobs must be at least 1");
    if (options.out_dir.empty()) throw InputError("census needs an output directory");
    fs::path root(options.out_dir);
    fs::create_directories(root);
    fs::path config = root / "config.json";
    nlohmann::json want = config_json(options);
    if (fs::exists(config)) {
        nlohmann::json have;
        try {
            have = nlohmann::json::parse(read_text_file(config.string()));
        } catch (const nlohmann::json::exception&) {
            throw StateError("unreadable census config in " + root.string());
        }
        if (have != want)
            throw StateError("output directory " + root.string() + " holds a census with different parameters: " +
                             have.dump());
    } else {
        write_atomic(config, want.dump(2) + "\n");
    }
    for (auto c : options.classes) {
        fs::create_directories(root / "records" / class_name(c));
        fs::create_directories(root / "witnesses" / class_name(c));
        fs::create_directories(root / "certificates" / class_name(c));
    }

    auto pairs = enumerate_ordered_pairs(options.n);
    std::size_t ncls = options.classes.size();
    std::vector<CensusRow> rows(pairs.size() * ncls);
    std::vector<char> resumed(rows.size(), 0);
    std::mutex error_mutex;
    std::exception_ptr error;

    auto work = [&](int worker) {
        try {
            for (std::size_t p = static_cast<std::size_t>(worker); p < pairs.size(); p += options.jobs) {
                OrderedTuple tuple{pairs[p].first, pairs[p].second};
                for (std::size_t ci = 0; ci < ncls; ++ci) {
                    RealizationClass cls = options.classes[ci];
                    std::string cname = class_name(cls);
                    std::string stem = std::to_string(p);
                    CensusRow& row = rows[p * ncls + ci];
                    row.pair_index = p;
                    row.f_hex = tuple[0].to_hex();
                    row.g_hex = tuple[1].to_hex();
                    row.cls = cls;
                    fs::path record = root / "records" / cname / (stem + ".txt");
                    if (fs::exists(record)) {
                        std::istringstream in(read_text_file(record.string()));
                        std::string verdict;
                        std::getline(in, verdict);
                        std::getline(in, row.witness_path);
                        std::getline(in, row.certificate_path);
                        row.verdict = parse_verdict(verdict);
                        resumed[p * ncls + ci] = 1;
                        continue;
                    }
                    Verdict v = check_class(tuple, cls, options.check);
                    row.verdict = v.kind;
                    if (v.witness || v.k_witness) {
                        WitnessFile wf{cls, tuple, v.witness, v.k_witness};
                        row.witness_path = (fs::path("witnesses") / cname / (stem + ".wit")).string();
                        write_atomic(root / row.witness_path, write_witness_file(wf));
                    }
                    if (v.certificate) {
                        row.certificate_path = (fs::path("certificates") / cname / (stem + ".json")).string();
                        nlohmann::json cj;
                        cj["tuple"] = {row.f_hex, row.g_hex};
                        cj["certificate"] = certificate_to_json(*v.certificate);
                        write_atomic(root / row.certificate_path, cj.dump(1) + "\n");
                    }
                    write_atomic(record, verdict_name(v.kind) + "\n" + row.witness_path + "\n" + row.certificate_path + "\n");
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    if (options.jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < options.jobs; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);

    CensusReport report;
    report.n = options.n;
    report.rows = std::move(rows);
    for (auto c : options.classes) report.counts[c] = {0, 0, 0};
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        report.counts[report.rows[r].cls][kind_slot(report.rows[r].verdict)]++;
        if (resumed[r])
            ++report.resumed;
        else
            ++report.computed;
    }
    write_atomic(root / "census.csv", census_csv(report));
    write_atomic(root / "summary.txt", census_summary(report));
    return report;
}

std::string census_csv(const CensusReport& report) {
    std::ostringstream out;
    out << kCensusHeader << "\n";
    for (const auto& r : report.rows)
        out << r.pair_index << "," << r.f_hex << "," << r.g_hex << "," << class_name(r.cls) << ","
            << verdict_name(r.verdict) << "," << r.witness_path << "," << r.certificate_path << "\n";
    return out.str();
}

std::string census_summary(const CensusReport& report) {
    std::ostringstream out;
    std::size_t pairs = report.counts.empty() ? 0 : report.rows.size() / report.counts.size();
    out << "n = " << report.n << ", ordered pairs = " << pairs << "\n";
    for (const auto& [cls, c] : report.counts)
        out << class_name(cls) << ": " << c[0] << " Realizable, " << c[1] << " NotRealizable, " << c[2] << " Unknown\n";
    return out.str();
}

}  // namespace mbfreal
