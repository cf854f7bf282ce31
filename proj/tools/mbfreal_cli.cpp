#include "mbfreal/census.hpp"
#include "mbfreal/io.hpp"
#include "mbfreal/ksystem.hpp"
#include "mbfreal/paramgraph.hpp"
#include "mbfreal/realizability.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mbfreal;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kStateError = 3 };

OrderedTuple parse_pair(const std::vector<std::string>& hex) {
    if (hex.size() != 2) throw InputError("--pair takes two mbf hex strings");
    OrderedTuple t{MbfFunction::from_hex(hex[0]), MbfFunction::from_hex(hex[1])};
    if (t[0].arity() != t[1].arity()) throw ArityMismatch("pair arities differ");
    if (!implies(t[0], t[1])) throw InputError("f does not imply g");
    return t;
}

RegulatoryNetwork load_network(const std::string& path) {
    try {
        return RegulatoryNetwork::from_json(nlohmann::json::parse(read_text_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

nlohmann::json load_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

int cmd_enumerate(int n, bool pairs) {
    if (n < 0 || n > (pairs ? 4 : 5)) throw InputError(pairs ? "--pairs needs n <= 4" : "enumerate needs n <= 5");
    if (pairs) {
        auto all = enumerate_ordered_pairs(n);
        std::cout << all.size() << "\n";
        for (const auto& [f, g] : all) std::cout << f.to_hex() << " " << g.to_hex() << "\n";
    } else {
        auto all = enumerate_mbf_positive(n);
        std::cout << all.size() << "\n";
        for (const auto& f : all) std::cout << f.to_hex() << "\n";
    }
    return kOk;
}

int cmd_census(int n, const std::string& classes, const std::string& out, int jobs) {
    if (n != 3 && n != 4) throw InputError("census runs for n = 3 or 4");
    if (jobs < 1) throw InputError("--jobs must be positive");
    CensusOptions opt;
    opt.n = n;
    opt.out_dir = out;
    opt.jobs = jobs;
    std::stringstream ss(classes);
    for (std::string c; std::getline(ss, c, ',');)
        if (!c.empty()) opt.classes.push_back(parse_realization_class(c));
    if (opt.classes.empty()) throw InputError("--classes is empty");
    auto report = run_census(opt);
    std::cout << census_summary(report);
    return kOk;
}

int cmd_realize(const std::vector<std::string>& hex, const std::string& cls_name, const std::string& out,
                const std::string& cert_out) {
    auto tuple = parse_pair(hex);
    auto cls = parse_realization_class(cls_name);
    auto v = check_class(tuple, cls);
    std::cout << verdict_name(v.kind) << "\n";
    if (!v.diagnostics.empty()) std::cerr << v.diagnostics << "\n";
    if (v.kind == Verdict::Kind::Realizable) {
        WitnessFile wf{cls, tuple, v.witness, v.k_witness};
        auto text = write_witness_file(wf);
        if (out.empty())
            std::cout << text;
        else
            write_text_file(out, text);
    } else if (v.kind == Verdict::Kind::NotRealizable && v.certificate) {
        auto text = certificate_to_json(*v.certificate).dump(2) + "\n";
        if (cert_out.empty())
            std::cout << text;
        else
            write_text_file(cert_out, text);
    }
    return kOk;
}

int cmd_verify(const std::string& path, const std::vector<std::string>& hex) {
    auto wf = read_witness_file(read_text_file(path));
    OrderedTuple tuple = wf.tuple;
    if (!hex.empty()) {
        auto given = parse_pair(hex);
        if (given != tuple) {
            std::cout << "FAIL: witness file is for a different pair\n";
            return kVerifyFailed;
        }
    }
    bool ok = false;
    try {
        ok = wf.k_witness ? verify_k_witness(tuple, *wf.k_witness) : verify_witness(tuple, *wf.witness);
    } catch (const InvalidWitness& e) {
        std::cout << "FAIL: " << e.what() << "\n";
        return kVerifyFailed;
    }
    std::cout << (ok ? "OK" : "FAIL") << "\n";
    return ok ? kOk : kVerifyFailed;
}

int cmd_stg(const std::string& net_path, const std::string& k_path, const std::string& out) {
    auto net = load_network(net_path);
    auto k = k_from_json(net, load_json(k_path));
    auto problems = validate_k(net, k);
    if (!problems.empty()) {
        for (const auto& p : problems) std::cerr << p << "\n";
        return kInputError;
    }
    auto g = build_stg(net, k);
    write_text_file(out, g.to_dot());
    std::cout << g.states.size() << " states, " << g.edge_count() << " edges\n";
    return kOk;
}

int cmd_pg(const std::string& net_path, const std::string& out, const std::string& annotate) {
    auto net = load_network(net_path);
    ParameterGraph pg(net);
    std::vector<RealizabilityAnnotation> notes;
    if (!annotate.empty()) notes.push_back(annotate_realizability(pg, parse_realization_class(annotate)));
    fs::create_directories(out);
    fs::path dir(out);
    write_text_file((dir / "pg.dot").string(), parameter_graph_to_dot(pg));
    write_text_file((dir / "pg.json").string(), parameter_graph_to_json(pg).dump(2) + "\n");
    write_text_file((dir / "pg.csv").string(), parameter_graph_to_csv(pg, notes));
    for (int i = 0; i < net.node_count(); ++i) {
        auto name = "factor_" + net.node(i).name + ".dot";
        write_text_file((dir / name).string(), factor_to_dot(pg.factors()[i]));
    }
    std::cout << pg.vertex_count() << " vertices, " << pg.edge_count() << " edges\n";
    if (!notes.empty()) {
        std::size_t counts[3] = {0, 0, 0};
        for (std::size_t v = 0; v < pg.vertex_count(); ++v)
            ++counts[static_cast<int>(notes[0].vertex_verdict(pg, v))];
        std::cout << class_name(notes[0].cls) << ": " << counts[0] << " Realizable, " << counts[1]
                  << " NotRealizable, " << counts[2] << " Unknown\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotone Boolean function realizability toolkit"};
    app.require_subcommand(1);

    int n = 0;
    bool pairs = false;
    auto* enumerate = app.add_subcommand("enumerate", "List MBF+(n) or its ordered pairs");
    enumerate->add_option("--n", n)->required();
    enumerate->add_flag("--pairs", pairs);

    std::string classes = "sigma,pisigma,sigmapisigma,k", out;
    int jobs = 1;
    auto* census = app.add_subcommand("census", "Check every ordered pair against each class");
    census->add_option("--n", n)->required();
    census->add_option("--classes", classes);
    census->add_option("--out", out)->required();
    census->add_option("--jobs", jobs);

    std::vector<std::string> pair;
    std::string cls = "sigma", cert_out;
    auto* realize = app.add_subcommand("realize", "Decide realizability of a pair in one class");
    realize->add_option("--pair", pair)->required()->expected(2);
    realize->add_option("--class", cls);
    realize->add_option("--out", out, "Witness file (stdout when omitted)");
    realize->add_option("--certificate", cert_out, "Certificate JSON (stdout when omitted)");

    std::string witness_path;
    auto* verify = app.add_subcommand("verify", "Replay a witness file");
    verify->add_option("--witness", witness_path)->required();
    verify->add_option("--pair", pair)->expected(2);

    std::string net_path, k_path;
    auto* stg = app.add_subcommand("stg", "State transition graph as DOT");
    stg->add_option("--net", net_path)->required();
    stg->add_option("--k", k_path)->required();
    stg->add_option("--out", out)->required();

    std::string annotate;
    auto* pg = app.add_subcommand("pg", "Parameter graph as DOT, JSON and CSV");
    pg->add_option("--net", net_path)->required();
    pg->add_option("--out", out)->required();
    pg->add_option("--annotate", annotate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*enumerate) return cmd_enumerate(n, pairs);
        if (*census) return cmd_census(n, classes, out, jobs);
        if (*realize) return cmd_realize(pair, cls, out, cert_out);
        if (*verify) return cmd_verify(witness_path, pair);
        if (*stg) return cmd_stg(net_path, k_path, out);
        if (*pg) return cmd_pg(net_path, out, annotate);
    } catch (const StateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kStateError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kOk;
}
