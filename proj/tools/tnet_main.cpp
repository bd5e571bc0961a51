#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tnet/clustering.hpp"
#include "tnet/energy.hpp"
#include "tnet/experiment.hpp"
#include "tnet/graph.hpp"
#include "tnet/landscape.hpp"
#include "tnet/lsm.hpp"
#include "tnet/netgen.hpp"
#include "tnet/persistence.hpp"
#include "tnet/pipeline.hpp"
#include "tnet/plots.hpp"

namespace fs = std::filesystem;
using namespace tnet;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

Landscape load_landscape(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open landscape file: " + path);
    return read_landscape_csv(in);
}

void append_descriptor_row(const std::string& path, const Graph& g) {
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out.precision(17);
    if (fresh) out << DescriptorRecord::csv_header() << '\n';
    descriptors(g).write_csv_row(out);
}

ScenarioConfig load_config(const std::string& path, ScenarioKind kind) {
    if (path.empty()) return ScenarioConfig::parse("", kind);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return ScenarioConfig::parse(text.str(), kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"population-level comparison of networks via latent space persistence"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "sample a graph from ER or SBM");
    generate->require_subcommand(1);
    struct {
        int n = 100;
        double p = 0.1;
        std::string blocks = "50,50";
        double p_high = 0.8, p_low = 0.1;
        uint64_t seed = 0;
        std::string out, describe;
    } gen;
    auto* gen_er_cmd = generate->add_subcommand("er", "Erdos-Renyi G(n,p)");
    gen_er_cmd->add_option("--n", gen.n, "node count")->required();
    gen_er_cmd->add_option("--p", gen.p, "edge probability")->required();
    gen_er_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_er_cmd->add_option("--out", gen.out, "output edge-list file")->required();
    gen_er_cmd->add_option("--describe", gen.describe, "append a descriptor CSV row here");
    auto* gen_sbm_cmd = generate->add_subcommand("sbm", "stochastic block model");
    gen_sbm_cmd->add_option("--blocks", gen.blocks, "comma list of block sizes")->required();
    gen_sbm_cmd->add_option("--p-high", gen.p_high, "within-block probability");
    gen_sbm_cmd->add_option("--p-low", gen.p_low, "between-block probability");
    gen_sbm_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_sbm_cmd->add_option("--out", gen.out, "output edge-list file")->required();
    gen_sbm_cmd->add_option("--describe", gen.describe, "append a descriptor CSV row here");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit the latent space model to a graph");
    struct {
        std::string graph, out;
        FitConfig cfg;
    } fit;
    fit_cmd->add_option("--graph", fit.graph, "input edge-list file")->required();
    fit_cmd->add_option("--out", fit.out, "output embedding CSV")->required();
    fit_cmd->add_option("--tol-grad", fit.cfg.tol_grad, "gradient sup-norm tolerance");
    fit_cmd->add_option("--max-iter", fit.cfg.max_iter, "maximum ascent iterations");

    // persistence
    auto* pers_cmd = app.add_subcommand("persistence", "VR persistence diagram of an embedding");
    struct {
        std::string embedding, out, convention = "radius";
        int order = 0;
    } pers;
    pers_cmd->add_option("--embedding", pers.embedding, "embedding CSV")->required();
    pers_cmd->add_option("--order", pers.order, "homology order (0 or 1)")
        ->check(CLI::IsMember({0, 1}));
    pers_cmd->add_option("--convention", pers.convention, "radius|diameter");
    pers_cmd->add_option("--out", pers.out, "output diagram CSV")->required();

    // landscape
    auto* land_cmd = app.add_subcommand("landscape", "persistence landscape of a diagram");
    struct {
        std::string diagram, out;
        bool keep_essential = false;
    } land;
    land_cmd->add_option("--diagram", land.diagram, "diagram CSV")->required();
    land_cmd->add_option("--out", land.out, "output landscape CSV")->required();
    land_cmd->add_flag("--keep-essential", land.keep_essential,
                       "keep classes truncated at max_filtration (excluded by default)");

    // test
    auto* test_cmd = app.add_subcommand("test", "multi-sample permutation test on landscapes");
    struct {
        std::vector<std::string> groups;
        std::string method = "ksample";
        int B = 999;
        uint64_t seed = 0;
        double rho = 1.0;
        std::string out, replicates;
    } tst;
    test_cmd->add_option("--group", tst.groups, "comma list of landscape CSVs (repeatable)")
        ->required()
        ->expected(-1);
    test_cmd->add_option("--method", tst.method, "ksample|disco|twosample");
    test_cmd->add_option("--b", tst.B, "permutation count");
    test_cmd->add_option("--seed", tst.seed, "RNG seed");
    test_cmd->add_option("--rho", tst.rho, "DISCO exponent in (0,2]");
    test_cmd->add_option("--out", tst.out, "output report JSON");
    test_cmd->add_option("--replicates", tst.replicates, "optional replicate dump CSV");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "cluster a set of landscapes");
    struct {
        std::string items, method = "kmedoids", out;
        int k = 2;
        uint64_t seed = 0;
        double rho = 1.0;
        int tau = 7;
    } clu;
    cluster_cmd->add_option("--items", clu.items, "comma list of landscape CSVs")->required();
    cluster_cmd->add_option("--method", clu.method, "kmedoids|kgroups|spectral");
    cluster_cmd->add_option("--k", clu.k, "cluster count")->required();
    cluster_cmd->add_option("--seed", clu.seed, "RNG seed");
    cluster_cmd->add_option("--rho", clu.rho, "k-groups exponent");
    cluster_cmd->add_option("--tau", clu.tau, "affinity neighbour index");
    cluster_cmd->add_option("--out", clu.out, "output partition CSV")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "simulation harness");
    exp_cmd->require_subcommand(1);
    struct {
        std::string config, out;
        int m = -1, reps = -1, B = -1, jobs = -1, tau = -1;
        double rho = -1.0;
        int64_t seed = -1;
        std::string probs, scenarios, convention, orders;
    } ex;
    auto add_exp_opts = [&](CLI::App* cmd) {
        cmd->add_option("--config", ex.config, "key = value config file");
        cmd->add_option("--out", ex.out, "artifact output directory")->required();
        cmd->add_option("--m", ex.m, "networks per group");
        cmd->add_option("--reps", ex.reps, "repetitions per cell");
        cmd->add_option("--b", ex.B, "permutation count");
        cmd->add_option("--seed", ex.seed, "RNG seed");
        cmd->add_option("--jobs", ex.jobs, "worker threads (0 = all cores)");
        cmd->add_option("--rho", ex.rho, "DISCO / k-groups exponent");
        cmd->add_option("--tau", ex.tau, "affinity neighbour index");
        cmd->add_option("--probs", ex.probs, "ER probabilities, comma list");
        cmd->add_option("--scenarios", ex.scenarios, "SBM scenarios, e.g. '2,3,4;2,5,10'");
        cmd->add_option("--convention", ex.convention, "radius|diameter");
        cmd->add_option("--orders", ex.orders, "homology orders, comma list");
    };
    auto* exp_er = exp_cmd->add_subcommand("er", "pairwise ER comparison grid");
    auto* exp_sbm = exp_cmd->add_subcommand("sbm", "SBM community-count scenarios");
    add_exp_opts(exp_er);
    add_exp_opts(exp_sbm);

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "render artifact files as SVG");
    struct {
        std::string artifacts, out;
    } plt;
    plot_cmd->add_option("--artifacts", plt.artifacts, "artifact directory")->required();
    plot_cmd->add_option("--out", plt.out, "SVG output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (gen_er_cmd->parsed() || gen_sbm_cmd->parsed()) {
            Graph g;
            if (gen_er_cmd->parsed()) {
                g = gen_er(gen.n, gen.p, gen.seed);
            } else {
                std::vector<int> blocks;
                for (const auto& tok : split_list(gen.blocks)) blocks.push_back(std::stoi(tok));
                g = gen_sbm(blocks, gen.p_high, gen.p_low, gen.seed);
            }
            g.save(gen.out);
            if (!gen.describe.empty()) append_descriptor_row(gen.describe, g);
        } else if (fit_cmd->parsed()) {
            const Graph g = Graph::load(fit.graph);
            const Embedding e = fit_lsm(g, fit.cfg);
            std::ofstream out(fit.out, std::ios::binary);
            write_embedding_csv(out, e);
        } else if (pers_cmd->parsed()) {
            std::ifstream in(pers.embedding);
            if (!in) throw std::invalid_argument("cannot open embedding: " + pers.embedding);
            const Embedding e = read_embedding_csv(in);
            const Filtration f =
                vr_filtration(e.positions, convention_from_string(pers.convention));
            const PersistenceDiagram d = pers.order == 0 ? diagram_h0(f) : diagram_h1(f);
            std::ofstream out(pers.out, std::ios::binary);
            write_diagram_csv(out, d);
        } else if (land_cmd->parsed()) {
            std::ifstream in(land.diagram);
            if (!in) throw std::invalid_argument("cannot open diagram: " + land.diagram);
            const PersistenceDiagram d = read_diagram_csv(in);
            const Landscape l = build_landscape(land.keep_essential ? d : drop_essential(d));
            std::ofstream out(land.out, std::ios::binary);
            write_landscape_csv(out, l);
        } else if (test_cmd->parsed()) {
            std::vector<Sample> samples;
            for (const auto& group : tst.groups) {
                Sample s;
                for (const auto& path : split_list(group)) s.items.push_back(load_landscape(path));
                samples.push_back(std::move(s));
            }
            PermutationConfig pc;
            pc.B = tst.B;
            pc.seed = tst.seed;
            pc.rho = tst.rho;
            if (tst.method == "ksample")
                pc.kind = StatisticKind::k_sample;
            else if (tst.method == "disco")
                pc.kind = StatisticKind::disco_between;
            else if (tst.method == "twosample")
                pc.kind = StatisticKind::two_sample;
            else
                throw std::invalid_argument("unknown test method: " + tst.method);
            const TestReport report = permutation_test(samples, pc);
            if (tst.out.empty()) {
                std::cout << report.to_json() << '\n';
            } else {
                std::ofstream out(tst.out, std::ios::binary);
                out << report.to_json() << '\n';
            }
            if (!tst.replicates.empty()) {
                std::ofstream out(tst.replicates, std::ios::binary);
                out.precision(17);
                out << "replicate,statistic\n";
                for (size_t b = 0; b < report.replicates.size(); ++b)
                    out << (b + 1) << ',' << report.replicates[b] << '\n';
            }
        } else if (cluster_cmd->parsed()) {
            std::vector<Landscape> items;
            for (const auto& path : split_list(clu.items)) items.push_back(load_landscape(path));
            const DistanceCache cache = DistanceCache::from_landscapes(items);
            Partition p;
            if (clu.method == "kmedoids") {
                p = k_medoids(cache, clu.k, clu.seed);
            } else if (clu.method == "kgroups") {
                p = k_groups(cache, clu.k, clu.rho, clu.seed);
            } else if (clu.method == "spectral") {
                const int tau = std::min(clu.tau, cache.size() - 1);
                p = spectral_cluster(build_affinity(cache, tau), clu.k, clu.seed);
            } else {
                throw std::invalid_argument("unknown cluster method: " + clu.method);
            }
            std::ofstream out(clu.out, std::ios::binary);
            out << "item,cluster\n";
            for (size_t i = 0; i < p.assignments.size(); ++i)
                out << i << ',' << p.assignments[i] << '\n';
            std::ofstream meta(clu.out + ".json", std::ios::binary);
            meta.precision(17);
            meta << "{\"method\":\"" << clu.method << "\",\"k\":" << clu.k
                 << ",\"objective\":" << p.objective << ",\"seed\":" << clu.seed
                 << ",\"rho\":" << clu.rho << ",\"tau\":" << clu.tau << "}\n";
        } else if (exp_er->parsed() || exp_sbm->parsed()) {
            const ScenarioKind kind =
                exp_er->parsed() ? ScenarioKind::er_pairwise : ScenarioKind::sbm_multisample;
            ScenarioConfig cfg = load_config(ex.config, kind);
            if (ex.m > 0) cfg.m = ex.m;
            if (ex.reps > 0) cfg.reps = ex.reps;
            if (ex.B > 0) cfg.B = ex.B;
            if (ex.seed >= 0) cfg.seed = static_cast<uint64_t>(ex.seed);
            if (ex.jobs >= 0) cfg.jobs = ex.jobs;
            if (ex.rho > 0.0) cfg.rho = ex.rho;
            if (ex.tau > 0) cfg.tau = ex.tau;
            if (!ex.convention.empty()) cfg.convention = convention_from_string(ex.convention);
            if (!ex.probs.empty()) {
                cfg.er_probs.clear();
                for (const auto& tok : split_list(ex.probs)) cfg.er_probs.push_back(std::stod(tok));
            }
            if (!ex.scenarios.empty()) {
                cfg.sbm_scenarios.clear();
                std::istringstream in(ex.scenarios);
                std::string part;
                while (std::getline(in, part, ';')) {
                    std::vector<int> ks;
                    for (const auto& tok : split_list(part)) ks.push_back(std::stoi(tok));
                    if (!ks.empty()) cfg.sbm_scenarios.push_back(ks);
                }
            }
            if (!ex.orders.empty()) {
                cfg.orders.clear();
                for (const auto& tok : split_list(ex.orders)) cfg.orders.push_back(std::stoi(tok));
            }
            if (kind == ScenarioKind::er_pairwise)
                run_er_pairwise(cfg, ex.out);
            else
                run_sbm_scenarios(cfg, ex.out);
        } else if (plot_cmd->parsed()) {
            emit_plots(plt.artifacts, plt.out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
