// orthorank: spectral bounds, exact oracles and orthogonal-representation
// search for graphs given as graph6 lines or family specs.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orthorank/certificate_io.hpp"
#include "orthorank/report.hpp"

namespace {

using namespace orthorank;

enum ExitCode { kClean = 0, kUsage = 1, kSoundness = 2, kBudget = 3 };

struct InputItem {
    std::string origin;  // "file:line" or "arg N"
    GraphSource source;
};

struct CommonArgs {
    std::vector<std::string> inputs;
    std::vector<std::string> files;
    std::uint64_t seed = 0;
    double tol_zero = 0.0;
    int restarts = 32;
    int max_iters = 2000;
    int max_n_exact = 20;
    int max_n_xi = 32;
    int weighted_iters = 200;
    long long node_budget = kDefaultNodeBudget;
    bool json = false;
    bool strict = false;
    bool timing = false;
    unsigned jobs = 1;
    std::string cert_dir;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool searches) {
    cmd->add_option("inputs", a.inputs, "graph6 strings or family specs such as kneser:5,2 (stdin if none)");
    cmd->add_option("-f,--file", a.files, "file with one graph6 line or family spec per line")->check(CLI::ExistingFile);
    cmd->add_option("--seed", a.seed, "global seed; each input gets a seed derived from it and its index");
    cmd->add_option("--tol-zero", a.tol_zero, "eigenvalue zero tolerance (default 1e-7 * max(1, max |mu|))")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-n-exact", a.max_n_exact, "largest n for the exact oracles")->check(CLI::NonNegativeNumber);
    cmd->add_option("--node-budget", a.node_budget, "branch-and-bound node limit per oracle")->check(CLI::PositiveNumber);
    if (searches) {
        cmd->add_option("--restarts", a.restarts, "random restarts per dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--max-iters", a.max_iters, "sweeps per restart")->check(CLI::PositiveNumber);
        cmd->add_option("--max-n-xi", a.max_n_xi, "largest n for the representation and weighted searches")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--weighted-iters", a.weighted_iters, "weighted Hoffman steps per restart (0 disables)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--cert-dir", a.cert_dir, "write found orthogonal representations here as JSON");
    }
    cmd->add_flag("--json", a.json, "one JSON document per input line");
    cmd->add_flag("--strict", a.strict, "exit 3 when an oracle runs out of budget");
    cmd->add_flag("--timing", a.timing, "record runtime in meta (makes output nondeterministic)");
    cmd->add_option("-j,--jobs", a.jobs, "worker threads")->check(CLI::Range(1u, 256u));
}

std::vector<InputItem> collect_inputs(const CommonArgs& a) {
    std::vector<InputItem> items;
    auto add_line = [&](const std::string& origin, const std::string& line) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') return;
        try {
            items.push_back({origin, parse_graph_source(line)});
        } catch (const std::exception& e) {
            throw std::runtime_error(origin + ": " + e.what());
        }
    };
    for (std::size_t i = 0; i < a.inputs.size(); ++i) add_line("arg " + std::to_string(i + 1), a.inputs[i]);
    for (const auto& path : a.files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error(path + ": cannot open");
        std::string line;
        for (int no = 1; std::getline(in, line); ++no) add_line(path + ":" + std::to_string(no), line);
    }
    if (a.inputs.empty() && a.files.empty()) {
        std::string line;
        for (int no = 1; std::getline(std::cin, line); ++no) add_line("stdin:" + std::to_string(no), line);
    }
    return items;
}

/// Runs `work(i)` for every index on up to `jobs` threads. Results are stored
/// by index, so output order never depends on scheduling.
template <typename Work>
void parallel_for(std::size_t count, unsigned jobs, Work work) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) work(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

int run_graphs(const CommonArgs& a, const ReportSections& sections) {
    const auto items = collect_inputs(a);
    ReportOptions base;
    base.sections = sections;
    base.seed = a.seed;
    if (a.tol_zero > 0.0) base.tol_zero = a.tol_zero;
    base.restarts = a.restarts;
    base.max_iters = a.max_iters;
    base.max_n_exact = a.max_n_exact;
    base.max_n_xi = a.max_n_xi;
    base.weighted_iters = a.weighted_iters;
    base.node_budget = a.node_budget;
    base.timing = a.timing;
    base.validate();
    if (!a.cert_dir.empty()) std::filesystem::create_directories(a.cert_dir);

    struct Outcome {
        std::string text;
        bool soundness_failed = false;
        bool inconclusive = false;
    };
    std::vector<Outcome> outcomes(items.size());
    parallel_for(items.size(), a.jobs, [&](std::size_t i) {
        auto& out = outcomes[i];
        const auto& item = items[i];
        ReportOptions opt = base;
        opt.graph_seed = derive_seed(a.seed, i);
        try {
            std::optional<OrthoRepresentation> cert;
            auto doc = run_report(item.source.graph, item.source.family, opt, &cert);
            if (cert && !a.cert_dir.empty() && doc.xi) {
                const auto file = (std::filesystem::path(a.cert_dir) / ("cert-" + std::to_string(i) + ".json")).string();
                std::ofstream(file) << to_json(item.source.graph, *cert).dump() << '\n';
                doc.xi->certificate_file = file;
            }
            out.text = emit(doc, a.json ? Format::json : Format::table);
            out.soundness_failed = doc.soundness_failed();
            out.inconclusive = doc.inconclusive();
        } catch (const InconsistencyError& e) {
            out.text = item.origin + ": internal inconsistency: " + e.what();
            out.soundness_failed = true;
        }
    });

    bool unsound = false, inconclusive = false;
    for (const auto& o : outcomes) {
        std::cout << o.text;
        if (a.json || o.text.empty() || o.text.back() != '\n') std::cout << '\n';
        unsound |= o.soundness_failed;
        inconclusive |= o.inconclusive;
    }
    if (unsound) return kSoundness;
    if (a.strict && inconclusive) return kBudget;
    return kClean;
}

int run_verify(const std::vector<std::string>& files, bool json) {
    int code = kClean;
    for (const auto& path : files) {
        nlohmann::json result = {{"file", path}};
        std::string summary;
        try {
            std::ifstream in(path);
            if (!in) throw ValidationError("cannot open");
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ValidationError(std::string("invalid JSON: ") + e.what());
            }
            const auto cert = certificate_from_json(j);
            const Graph& g = cert.graph;
            const auto in_g = inertia(g).inertia;
            std::vector<std::string> diagnostics;
            bool valid = false;
            if (const auto* rep = std::get_if<OrthoRepresentation>(&cert.certificate)) {
                const auto ver = verify_representation(g, *rep);
                valid = ver.valid;
                diagnostics = ver.diagnostics;
                result["type"] = "orthogonal";
                result["dimension"] = rep->dimension;
                result["residual"] = ver.residual;
                if (valid) {
                    const bool ineq = satisfies_inertial_inequality(rep->dimension, in_g);
                    result["inertia_dimension_inequality"] = ineq;
                    const double conv = verify_conversion_identity(g, normalize_first_entries(g, *rep, 0));
                    result["conversion_identity_residual"] = conv;
                    if (!ineq || !(conv < 1e-8)) code = std::max(code, static_cast<int>(kSoundness));
                }
                summary = "orthogonal representation in dimension " + std::to_string(rep->dimension);
            } else {
                const auto& proj = std::get<ProjectorRepresentation>(cert.certificate);
                const auto dr = verify_dr_representation(g, proj);
                valid = dr.valid;
                diagnostics = dr.diagnostics;
                result["type"] = "projector";
                result["ratio"] = to_string(dr.ratio);
                result["residual"] = dr.orthogonality_residual;
                if (valid) {
                    const bool proven = satisfies_projective_bound(dr.ratio, in_g);
                    result["projective_bound"] = proven;
                    result["conjectured_bound"] = satisfies_conjectured_bound(dr.ratio, in_g);
                    if (!proven) code = std::max(code, static_cast<int>(kSoundness));
                }
                summary = std::to_string(proj.dimension) + "/" + std::to_string(proj.rank) + "-representation";
            }
            result["valid"] = valid;
            result["diagnostics"] = diagnostics;
            if (!valid) code = std::max(code, static_cast<int>(kUsage));
            if (!json) {
                std::cout << path << ": " << (valid ? "valid " : "INVALID ") << summary << '\n';
                for (const auto& [key, val] : result.items())
                    if (key != "file" && key != "diagnostics" && key != "valid" && key != "type")
                        std::cout << "  " << key << ' ' << val.dump() << '\n';
                for (const auto& d : diagnostics) std::cout << "  diagnostic: " << d << '\n';
            }
        } catch (const std::exception& e) {
            result["valid"] = false;
            result["diagnostics"] = {e.what()};
            code = std::max(code, static_cast<int>(kUsage));
            if (!json) std::cout << path << ": INVALID " << e.what() << '\n';
        }
        if (json) std::cout << result.dump() << '\n';
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral lower bounds, exact oracles and orthogonal representations for graphs"};
    app.set_version_flag("--version", std::string(ORTHORANK_VERSION));
    app.require_subcommand(1);

    CommonArgs args;
    auto* report = app.add_subcommand("report", "full battery: spectra, bounds, exact oracles, xi interval");
    add_common(report, args, true);
    auto* bounds = app.add_subcommand("bounds", "spectra and spectral bounds only");
    add_common(bounds, args, true);
    auto* exact = app.add_subcommand("exact", "exact oracles only: chi, omega, alpha, chi_f");
    add_common(exact, args, false);
    auto* xi = app.add_subcommand("xi", "lower bound and representation search for the orthogonal rank");
    add_common(xi, args, true);

    std::vector<std::string> cert_files;
    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "check certificate files");
    verify->add_option("files", cert_files, "certificate JSON files")->required();
    verify->add_flag("--json", verify_json, "one JSON result per file");

    std::vector<std::string> specs;
    bool complement_flag = false;
    auto* gen = app.add_subcommand("gen", "print graphs as graph6");
    gen->add_option("specs", specs, "family specs, graph6 strings or products a*b")->required();
    gen->add_flag("--complement", complement_flag, "print the complement instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kClean : kUsage;
    }

    try {
        if (report->parsed()) return run_graphs(args, {});
        if (bounds->parsed()) return run_graphs(args, {true, true, false, false, true});
        if (exact->parsed()) return run_graphs(args, {false, false, true, false, false});
        if (xi->parsed()) return run_graphs(args, {false, false, false, true, false});
        if (verify->parsed()) return run_verify(cert_files, verify_json);
        if (gen->parsed()) {
            for (const auto& s : specs) {
                const auto src = parse_graph_source(s);
                std::cout << serialize_graph6(complement_flag ? complement(src.graph) : src.graph) << '\n';
            }
            return kClean;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
