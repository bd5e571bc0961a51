#include "tnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tnet/clustering.hpp"
#include "tnet/energy.hpp"
#include "tnet/netgen.hpp"
#include "tnet/pipeline.hpp"
#include "tnet/rng.hpp"

namespace fs = std::filesystem;

namespace tnet {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, sep)) {
        // trim
        const auto b = tok.find_first_not_of(" \t\r");
        const auto e = tok.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
    }
    return out;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text, ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '[') continue;  // section header
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value': " + line);
        auto key_parts = split(line.substr(0, eq), ' ');
        std::string key;
        for (const auto& part : key_parts) key += part;
        const auto vals = split(line.substr(eq + 1), '\n');
        const std::string value = vals.empty() ? "" : vals[0];

        if (key == "probs") {
            cfg.er_probs.clear();
            for (const auto& tok : split(value, ',')) cfg.er_probs.push_back(std::stod(tok));
        } else if (key == "scenarios") {
            cfg.sbm_scenarios.clear();
            for (const auto& group : split(value, ';')) {
                std::vector<int> ks;
                for (const auto& tok : split(group, ',')) ks.push_back(std::stoi(tok));
                if (!ks.empty()) cfg.sbm_scenarios.push_back(ks);
            }
        } else if (key == "orders") {
            cfg.orders.clear();
            for (const auto& tok : split(value, ',')) cfg.orders.push_back(std::stoi(tok));
        } else if (key == "m") {
            cfg.m = std::stoi(value);
        } else if (key == "reps") {
            cfg.reps = std::stoi(value);
        } else if (key == "b" || key == "B") {
            cfg.B = std::stoi(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "convention") {
            cfg.convention = convention_from_string(value);
        } else if (key == "rho") {
            cfg.rho = std::stod(value);
        } else if (key == "tau") {
            cfg.tau = std::stoi(value);
        } else if (key == "p_high") {
            cfg.p_high = std::stod(value);
        } else if (key == "p_low") {
            cfg.p_low = std::stod(value);
        } else if (key == "n_min") {
            cfg.n_min = std::stoi(value);
        } else if (key == "n_max") {
            cfg.n_max = std::stoi(value);
        } else if (key == "jobs") {
            cfg.jobs = std::stoi(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    if (cfg.m < 1 || cfg.reps < 1 || cfg.B < 1 || cfg.n_min < 3 || cfg.n_max < cfg.n_min)
        throw std::invalid_argument("config: counts must be positive and n range valid");
    for (const double p : cfg.er_probs)
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("config: probability outside [0,1]");
    for (const int o : cfg.orders)
        if (o != 0 && o != 1) throw std::invalid_argument("config: orders must be 0 or 1");
    return cfg;
}

std::string ScenarioConfig::resolved_text() const {
    std::ostringstream out;
    out.precision(17);
    out << "kind = " << (kind == ScenarioKind::er_pairwise ? "er_pairwise" : "sbm_multisample")
        << '\n';
    out << "probs = ";
    for (size_t i = 0; i < er_probs.size(); ++i) out << (i ? "," : "") << er_probs[i];
    out << '\n' << "scenarios = ";
    for (size_t s = 0; s < sbm_scenarios.size(); ++s) {
        if (s) out << ';';
        for (size_t i = 0; i < sbm_scenarios[s].size(); ++i)
            out << (i ? "," : "") << sbm_scenarios[s][i];
    }
    out << '\n';
    out << "p_high = " << p_high << '\n';
    out << "p_low = " << p_low << '\n';
    out << "m = " << m << '\n';
    out << "n_min = " << n_min << '\n';
    out << "n_max = " << n_max << '\n';
    out << "b = " << B << '\n';
    out << "reps = " << reps << '\n';
    out << "seed = " << seed << '\n';
    out << "orders = ";
    for (size_t i = 0; i < orders.size(); ++i) out << (i ? "," : "") << orders[i];
    out << '\n';
    out << "convention = " << to_string(convention) << '\n';
    out << "rho = " << rho << '\n';
    out << "tau = " << tau << '\n';
    // jobs is an execution detail: it never changes the artifacts, so it is
    // not part of the resolved configuration
    return out.str();
}

double RunArtifacts::mean(int cell, int order_index, double RepMetrics::* field) const {
    const auto& reps = cells[cell].reps[order_index];
    double s = 0.0;
    for (const auto& r : reps) s += r.*field;
    return s / static_cast<double>(reps.size());
}

namespace {

struct DescRow {
    int group = 0;
    int graph = 0;
    DescriptorRecord rec;
};

struct SampleDump {
    std::vector<int> group_of;
    std::vector<std::vector<double>> dist;         // per order index, flat n x n
    std::vector<std::vector<Landscape>> first_ls;  // [order_index][group]
};

struct Unit {
    int cell = 0;
    int rep = 0;
    std::vector<RepMetrics> per_order;
    std::vector<DescRow> descriptors;
    SampleDump sample;  // filled for rep 0 only
};

// One repetition of one cell: generate the groups, push every graph through
// the pipeline, then test and cluster each homology order from one pooled
// distance cache.
void run_unit(const ScenarioConfig& cfg, Unit& unit) {
    const uint64_t unit_seed =
        Rng::derive(cfg.seed, static_cast<uint64_t>(unit.cell) + 1,
                    static_cast<uint64_t>(unit.rep) + 1);
    Rng size_rng(Rng::derive(unit_seed, 17));

    const bool er = cfg.kind == ScenarioKind::er_pairwise;
    int group_count = 0;
    std::vector<double> er_pair;
    std::vector<int> scenario;
    if (er) {
        // cell enumerates (i < j) prob pairs
        int at = 0;
        for (size_t i = 0; i < cfg.er_probs.size() && er_pair.empty(); ++i)
            for (size_t j = i + 1; j < cfg.er_probs.size(); ++j)
                if (at++ == unit.cell) {
                    er_pair = {cfg.er_probs[i], cfg.er_probs[j]};
                    break;
                }
        group_count = 2;
    } else {
        scenario = cfg.sbm_scenarios[unit.cell];
        group_count = static_cast<int>(scenario.size());
    }

    const int total = group_count * cfg.m;
    std::vector<int> truth(total);
    std::vector<std::vector<Landscape>> by_order(cfg.orders.size(),
                                                 std::vector<Landscape>(total));
    FitConfig fit_cfg;

    for (int g = 0; g < total; ++g) {
        const int group = g / cfg.m;
        truth[g] = group;
        const int n = cfg.n_min + static_cast<int>(size_rng.uniform_int(
                                      static_cast<uint64_t>(cfg.n_max - cfg.n_min) + 1));
        const uint64_t graph_seed = Rng::derive(unit_seed, 100 + g);
        Graph graph;
        if (er) {
            graph = gen_er(n, er_pair[group], graph_seed);
        } else {
            graph = gen_sbm(even_blocks(n, scenario[group]), cfg.p_high, cfg.p_low, graph_seed);
        }
        unit.descriptors.push_back({group, g % cfg.m, descriptors(graph)});

        const PipelinePair piped = run_pipeline_both_orders(graph, cfg.convention, fit_cfg);
        for (size_t oi = 0; oi < cfg.orders.size(); ++oi)
            by_order[oi][g] = cfg.orders[oi] == 0 ? piped.order0 : piped.order1;
    }

    std::vector<int> group_sizes(group_count, cfg.m);
    std::vector<std::vector<int>> groups(group_count);
    for (int g = 0; g < total; ++g) groups[truth[g]].push_back(g);

    unit.per_order.resize(cfg.orders.size());
    if (unit.rep == 0) unit.sample.group_of = truth;

    for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
        const DistanceCache cache = DistanceCache::from_landscapes(by_order[oi]);
        RepMetrics& out = unit.per_order[oi];

        PermutationConfig pc;
        pc.B = cfg.B;
        pc.rho = cfg.rho;
        pc.kind = StatisticKind::k_sample;
        pc.seed = Rng::derive(unit_seed, 2, oi);
        out.p_ksample = permutation_test(cache, group_sizes, pc).p_value;

        pc.kind = StatisticKind::disco_between;
        pc.seed = Rng::derive(unit_seed, 3, oi);
        out.p_disco = permutation_test(cache, group_sizes, pc).p_value;

        const int k = group_count;
        const Partition pm = k_medoids(cache, k, Rng::derive(unit_seed, 4, oi));
        out.rand_kmedoids = rand_index(pm.assignments, truth);
        const Partition pg = k_groups(cache, k, cfg.rho, Rng::derive(unit_seed, 5, oi));
        out.rand_kgroups = rand_index(pg.assignments, truth);
        const int tau = std::min(cfg.tau, total - 1);
        const Partition ps =
            spectral_cluster(build_affinity(cache, tau), k, Rng::derive(unit_seed, 6, oi));
        out.rand_spectral = rand_index(ps.assignments, truth);

        if (unit.rep == 0) {
            std::vector<double> flat(static_cast<size_t>(total) * total);
            for (int i = 0; i < total; ++i)
                for (int j = 0; j < total; ++j)
                    flat[static_cast<size_t>(i) * total + j] = cache.at(i, j);
            unit.sample.dist.push_back(std::move(flat));
            std::vector<Landscape> firsts;
            for (int g = 0; g < group_count; ++g) firsts.push_back(by_order[oi][groups[g][0]]);
            unit.sample.first_ls.push_back(std::move(firsts));
        }
    }
}

RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunArtifacts artifacts;
    artifacts.cfg = cfg;

    int cell_count = 0;
    std::vector<std::string> labels;
    if (cfg.kind == ScenarioKind::er_pairwise) {
        for (size_t i = 0; i < cfg.er_probs.size(); ++i)
            for (size_t j = i + 1; j < cfg.er_probs.size(); ++j) {
                std::ostringstream lab;
                lab << "p=" << cfg.er_probs[i] << " vs p=" << cfg.er_probs[j];
                labels.push_back(lab.str());
                ++cell_count;
            }
    } else {
        for (const auto& sc : cfg.sbm_scenarios) {
            std::ostringstream lab;
            lab << '{';
            for (size_t i = 0; i < sc.size(); ++i) lab << (i ? "," : "") << sc[i];
            lab << '}';
            labels.push_back(lab.str());
            ++cell_count;
        }
    }

    std::vector<Unit> units;
    for (int c = 0; c < cell_count; ++c)
        for (int r = 0; r < cfg.reps; ++r) {
            Unit u;
            u.cell = c;
            u.rep = r;
            units.push_back(u);
        }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t u = next.fetch_add(1);
            if (u >= units.size()) break;
            run_unit(cfg, units[u]);
        }
    };
    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, units.size());
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // deterministic reduce in (cell, rep) order
    artifacts.cells.resize(cell_count);
    for (int c = 0; c < cell_count; ++c) {
        artifacts.cells[c].label = labels[c];
        artifacts.cells[c].reps.assign(cfg.orders.size(), std::vector<RepMetrics>(cfg.reps));
    }
    if (cfg.kind == ScenarioKind::er_pairwise) {
        int at = 0;
        for (size_t i = 0; i < cfg.er_probs.size(); ++i)
            for (size_t j = i + 1; j < cfg.er_probs.size(); ++j) {
                artifacts.cells[at].a = static_cast<int>(i);
                artifacts.cells[at].b = static_cast<int>(j);
                ++at;
            }
    } else {
        for (int c = 0; c < cell_count; ++c) artifacts.cells[c].a = c;
    }
    for (const Unit& u : units)
        for (size_t oi = 0; oi < cfg.orders.size(); ++oi)
            artifacts.cells[u.cell].reps[oi][u.rep] = u.per_order[oi];

    if (!out_dir.empty()) {
        write_artifacts(artifacts, out_dir);

        // per-graph descriptors and rep-0 sample dumps
        std::ofstream desc(fs::path(out_dir) / "descriptors.csv", std::ios::binary);
        desc.precision(17);
        desc << "cell,rep,group,graph," << DescriptorRecord::csv_header() << '\n';
        for (const Unit& u : units)
            for (const DescRow& row : u.descriptors) {
                desc << u.cell << ',' << u.rep << ',' << row.group << ',' << row.graph << ',';
                row.rec.write_csv_row(desc);
            }

        const fs::path samples = fs::path(out_dir) / "samples";
        fs::create_directories(samples);
        for (const Unit& u : units) {
            if (u.rep != 0) continue;
            for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
                const int order = cfg.orders[oi];
                {
                    std::ostringstream name;
                    name << "dist_cell" << u.cell << "_order" << order << ".csv";
                    std::ofstream out(samples / name.str(), std::ios::binary);
                    out.precision(17);
                    out << "# groups=";
                    for (size_t i = 0; i < u.sample.group_of.size(); ++i)
                        out << (i ? "," : "") << u.sample.group_of[i];
                    out << '\n';
                    const int n = static_cast<int>(u.sample.group_of.size());
                    for (int i = 0; i < n; ++i) {
                        for (int j = 0; j < n; ++j)
                            out << (j ? "," : "") << u.sample.dist[oi][static_cast<size_t>(i) * n + j];
                        out << '\n';
                    }
                }
                for (size_t g = 0; g < u.sample.first_ls[oi].size(); ++g) {
                    std::ostringstream name;
                    name << "landscape_cell" << u.cell << "_group" << g << "_order" << order
                         << ".csv";
                    std::ofstream out(samples / name.str(), std::ios::binary);
                    write_landscape_csv(out, u.sample.first_ls[oi][g]);
                }
            }
        }
    }
    return artifacts;
}

}  // namespace

RunArtifacts run_er_pairwise(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioConfig c = cfg;
    c.kind = ScenarioKind::er_pairwise;
    if (c.er_probs.size() < 2)
        throw std::invalid_argument("run_er_pairwise: need at least two probabilities");
    return run_scenario(c, out_dir);
}

RunArtifacts run_sbm_scenarios(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioConfig c = cfg;
    c.kind = ScenarioKind::sbm_multisample;
    if (c.sbm_scenarios.empty())
        throw std::invalid_argument("run_sbm_scenarios: need at least one scenario");
    for (const auto& sc : c.sbm_scenarios)
        if (sc.size() < 2)
            throw std::invalid_argument("run_sbm_scenarios: scenarios need >= 2 community counts");
    return run_scenario(c, out_dir);
}

void write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir) {
    const ScenarioConfig& cfg = artifacts.cfg;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    const std::string resolved = cfg.resolved_text();
    {
        std::ofstream out(dir / "config.txt", std::ios::binary);
        out << resolved;
    }
    {
        std::ofstream out(dir / "provenance.json", std::ios::binary);
        out << "{\"version\":\"0.1.0\",\"seed\":" << cfg.seed << ",\"config_hash\":\"" << std::hex
            << fnv1a(resolved) << std::dec << "\"}\n";
    }
    {
        std::ofstream out(dir / "per_rep.csv", std::ios::binary);
        out.precision(17);
        out << "cell,label,rep,order,p_ksample,p_disco,rand_kmedoids,rand_kgroups,rand_spectral\n";
        for (size_t c = 0; c < artifacts.cells.size(); ++c)
            for (size_t oi = 0; oi < cfg.orders.size(); ++oi)
                for (int r = 0; r < cfg.reps; ++r) {
                    const RepMetrics& m = artifacts.cells[c].reps[oi][r];
                    out << c << ",\"" << artifacts.cells[c].label << "\"," << r << ','
                        << cfg.orders[oi] << ',' << m.p_ksample << ',' << m.p_disco << ','
                        << m.rand_kmedoids << ',' << m.rand_kgroups << ',' << m.rand_spectral
                        << '\n';
                }
    }

    struct Metric {
        const char* name;
        double RepMetrics::* field;
    };
    const Metric metrics[] = {{"pvalue_ksample", &RepMetrics::p_ksample},
                              {"pvalue_disco", &RepMetrics::p_disco},
                              {"rand_kmedoids", &RepMetrics::rand_kmedoids},
                              {"rand_kgroups", &RepMetrics::rand_kgroups},
                              {"rand_spectral", &RepMetrics::rand_spectral}};

    if (cfg.kind == ScenarioKind::er_pairwise) {
        const size_t np = cfg.er_probs.size();
        for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
            for (const auto& metric : metrics) {
                std::ostringstream name;
                name << "mean_" << metric.name << "_order" << cfg.orders[oi] << ".csv";
                std::ofstream out(dir / name.str(), std::ios::binary);
                out.precision(17);
                out << "p";
                for (const double p : cfg.er_probs) out << ',' << p;
                out << '\n';
                // lower-triangular layout: row j, column i filled for i < j
                std::vector<std::vector<std::string>> grid(np, std::vector<std::string>(np));
                for (size_t c = 0; c < artifacts.cells.size(); ++c) {
                    std::ostringstream v;
                    v.precision(17);
                    v << artifacts.mean(static_cast<int>(c), static_cast<int>(oi), metric.field);
                    grid[artifacts.cells[c].b][artifacts.cells[c].a] = v.str();
                }
                for (size_t row = 0; row < np; ++row) {
                    out << cfg.er_probs[row];
                    for (size_t col = 0; col < np; ++col) out << ',' << grid[row][col];
                    out << '\n';
                }
            }
        }
    } else {
        std::ofstream pv(dir / "mean_pvalues.csv", std::ios::binary);
        pv.precision(17);
        pv << "scenario,order,ksample,disco\n";
        std::ofstream rd(dir / "mean_rand.csv", std::ios::binary);
        rd.precision(17);
        rd << "scenario,order,kmedoids,kgroups,spectral\n";
        for (size_t c = 0; c < artifacts.cells.size(); ++c)
            for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
                const int ci = static_cast<int>(c), o = static_cast<int>(oi);
                pv << '"' << artifacts.cells[c].label << "\"," << cfg.orders[oi] << ','
                   << artifacts.mean(ci, o, &RepMetrics::p_ksample) << ','
                   << artifacts.mean(ci, o, &RepMetrics::p_disco) << '\n';
                rd << '"' << artifacts.cells[c].label << "\"," << cfg.orders[oi] << ','
                   << artifacts.mean(ci, o, &RepMetrics::rand_kmedoids) << ','
                   << artifacts.mean(ci, o, &RepMetrics::rand_kgroups) << ','
                   << artifacts.mean(ci, o, &RepMetrics::rand_spectral) << '\n';
            }
    }
}

}  // namespace tnet
