#include "dcd/harness.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "dcd/rng.hpp"

namespace dcd {

Scenario scenario_from_name(const std::string& name) {
    if (name == "sbm_symmetric") return Scenario::sbm_symmetric;
    if (name == "dcbm_symmetric_dense") return Scenario::dcbm_symmetric_dense;
    if (name == "dcbm_asymmetric_sparse") return Scenario::dcbm_asymmetric_sparse;
    if (name == "dcbm_asymmetric_dense") return Scenario::dcbm_asymmetric_dense;
    if (name == "real_data") return Scenario::real_data;
    throw ValidationError("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::sbm_symmetric: return "sbm_symmetric";
        case Scenario::dcbm_symmetric_dense: return "dcbm_symmetric_dense";
        case Scenario::dcbm_asymmetric_sparse: return "dcbm_asymmetric_sparse";
        case Scenario::dcbm_asymmetric_dense: return "dcbm_asymmetric_dense";
        case Scenario::real_data: return "real_data";
    }
    return "?";
}

Approach approach_from_name(const std::string& name) {
    if (name == "entire") return Approach::entire;
    if (name == "intersection_attach") return Approach::intersection_attach;
    if (name == "core_only") return Approach::core_only;
    throw ValidationError("unknown approach: " + name);
}

std::string approach_name(Approach a) {
    switch (a) {
        case Approach::entire: return "entire";
        case Approach::intersection_attach: return "intersection_attach";
        case Approach::core_only: return "core_only";
    }
    return "?";
}

DcbmParams scenario_params(Scenario s, NodeId n, std::uint64_t seed) {
    DcbmParams p;
    p.K = 2;
    p.B.resize(2, 2);
    std::vector<MixtureAtom> mix;
    bool delta_same = false;
    switch (s) {
        case Scenario::sbm_symmetric:
            p.B << 1.0, 0.4, 0.4, 1.0;
            mix = {{0.5, 0.01}, {0.1, 0.05}, {0.6, 0.4}};
            delta_same = true;
            break;
        case Scenario::dcbm_symmetric_dense:
            p.B << 1.0, 0.4, 0.4, 1.0;
            mix = {{0.5, 0.05}, {0.1, 0.05}, {0.6, 0.4}};
            delta_same = true;
            break;
        case Scenario::dcbm_asymmetric_sparse:
            p.B << 1.0, 0.4, 0.5, 1.0;
            mix = {{0.5, 0.01}, {0.1, 0.01}, {0.6, 0.4}};
            break;
        case Scenario::dcbm_asymmetric_dense:
            p.B << 1.0, 0.4, 0.5, 1.0;
            mix = {{0.5, 0.05}, {0.1, 0.01}, {0.6, 0.4}};
            break;
        case Scenario::real_data:
            throw ValidationError("real_data has no synthetic parameters");
    }
    p.theta = sample_theta_mixture(mix, n, split_seed(seed, 0));
    p.delta = delta_same ? p.theta
                         : sample_theta_mixture(mix, n, split_seed(seed, 1));
    // uniformly random community labels
    Rng rng(split_seed(seed, 2));
    p.labels.resize(static_cast<std::size_t>(n));
    for (auto& lab : p.labels) lab = static_cast<int>(rng.uniform_int(2));
    bool seen[2] = {false, false};
    for (int lab : p.labels) seen[lab] = true;
    if (!(seen[0] && seen[1]))
        for (int k = 0; k < 2; ++k) p.labels[static_cast<std::size_t>(k)] = k;
    return p;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    ExperimentConfig c;
    c.scenario = scenario_from_name(j.at("scenario").get<std::string>());
    if (j.contains("n_grid")) c.n_grid = j["n_grid"].get<std::vector<NodeId>>();
    c.replicates = j.value("replicates", 50);
    c.roster = j.value("roster", std::vector<std::string>{"dscore"});
    for (const auto& a :
         j.value("approaches", std::vector<std::string>{"entire"}))
        c.approaches.push_back(approach_from_name(a));
    c.master_seed = j.value("seed", std::uint64_t{0});
    c.edge_file = j.value("edge_file", std::string{});
    c.label_file = j.value("label_file", std::string{});
    c.K = j.value("K", 2);
    c.base = j.value("base", 0);
    if (c.replicates < 1) throw ValidationError("replicates must be >= 1");
    if (c.scenario != Scenario::real_data && c.n_grid.empty())
        throw ValidationError("n_grid must be nonempty");
    return c;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario_name(scenario);
    j["n_grid"] = n_grid;
    j["replicates"] = replicates;
    j["roster"] = roster;
    std::vector<std::string> apps;
    for (Approach a : approaches) apps.push_back(approach_name(a));
    j["approaches"] = apps;
    j["seed"] = master_seed;
    j["edge_file"] = edge_file;
    j["label_file"] = label_file;
    j["K"] = K;
    j["base"] = base;
    return j.dump(2);
}

namespace {

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string hash_hex(const std::string& s) {
    std::ostringstream os;
    os << std::hex << std::hash<std::string>{}(s);
    return os.str();
}

PipelineResult run_approach(const DirectedGraph& g, int K,
                            const AlgorithmSpec& spec, Approach approach,
                            std::uint64_t seed) {
    switch (approach) {
        case Approach::entire:
            return run_entire(g, K, spec, seed);
        case Approach::intersection_attach:
            return run_intersection_attach(g, K, spec, seed);
        case Approach::core_only:
            return run_core_only(g, K, spec, seed);
    }
    throw ValidationError("unreachable approach");
}

EvalReport evaluate(const PipelineResult& res, const std::vector<int>& truth,
                    int K, Approach approach) {
    if (approach == Approach::core_only) {
        std::vector<int> pred_core, truth_core;
        pred_core.reserve(res.core.size());
        for (NodeId v : res.core.members()) {
            pred_core.push_back(res.labels[static_cast<std::size_t>(v)]);
            truth_core.push_back(truth[static_cast<std::size_t>(v)]);
        }
        return misclustering(pred_core, truth_core, K);
    }
    return misclustering(res.labels, truth, K);
}

struct CellAccumulator {
    std::vector<EvalReport> reports;
    int failed = 0;
};

}  // namespace

ExperimentReport run_simulation(const ExperimentConfig& cfg) {
    if (cfg.scenario == Scenario::real_data)
        throw ValidationError("run_simulation requires a synthetic scenario");
    ExperimentReport report;
    report.master_seed = cfg.master_seed;
    report.config_hash = hash_hex(cfg.to_json());
    report.timestamp = now_iso8601();

    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        const NodeId n = cfg.n_grid[ni];
        std::vector<std::vector<CellAccumulator>> acc(
            cfg.roster.size(),
            std::vector<CellAccumulator>(cfg.approaches.size()));
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t rep_seed = split_seed(
                cfg.master_seed, ni * 1000003ULL + static_cast<std::uint64_t>(rep));
            const DcbmParams params =
                scenario_params(cfg.scenario, n, split_seed(rep_seed, 10));
            const DirectedGraph a0 =
                sample_adjacency(params, split_seed(rep_seed, 11));
            const Subgraph component =
                induced_subgraph(a0, largest_weak_component(a0));
            std::vector<int> truth;
            truth.reserve(component.to_old.size());
            for (NodeId old : component.to_old)
                truth.push_back(params.labels[static_cast<std::size_t>(old)]);

            for (std::size_t ai = 0; ai < cfg.roster.size(); ++ai) {
                const AlgorithmSpec spec = AlgorithmSpec::parse(cfg.roster[ai]);
                for (std::size_t pi = 0; pi < cfg.approaches.size(); ++pi) {
                    try {
                        const PipelineResult res = run_approach(
                            component.graph, params.K, spec,
                            cfg.approaches[pi], split_seed(rep_seed, 12));
                        acc[ai][pi].reports.push_back(evaluate(
                            res, truth, params.K, cfg.approaches[pi]));
                    } catch (const NumericalError&) {
                        ++acc[ai][pi].failed;
                    }
                }
            }
        }
        for (std::size_t ai = 0; ai < cfg.roster.size(); ++ai)
            for (std::size_t pi = 0; pi < cfg.approaches.size(); ++pi) {
                ReportCell cell;
                cell.scenario = scenario_name(cfg.scenario);
                cell.n = n;
                cell.algorithm = AlgorithmSpec::parse(cfg.roster[ai]).name();
                cell.approach = approach_name(cfg.approaches[pi]);
                cell.failed_replicates = acc[ai][pi].failed;
                if (!acc[ai][pi].reports.empty())
                    cell.summary = aggregate(acc[ai][pi].reports);
                report.cells.push_back(std::move(cell));
            }
    }
    return report;
}

ExperimentReport run_real(const ExperimentConfig& cfg) {
    if (cfg.scenario != Scenario::real_data)
        throw ValidationError("run_real requires the real_data scenario");
    std::ifstream edges(cfg.edge_file);
    if (!edges) throw ParseError("cannot open edge file: " + cfg.edge_file);
    const DirectedGraph full = from_edge_list(edges, cfg.base, true);
    std::ifstream labels_in(cfg.label_file);
    if (!labels_in)
        throw ParseError("cannot open label file: " + cfg.label_file);
    const std::vector<int> all_labels =
        read_label_file(labels_in, cfg.base, full.num_nodes());

    const Subgraph component =
        induced_subgraph(full, largest_weak_component(full));
    std::vector<int> truth;
    std::vector<NodeId> missing;
    for (NodeId old : component.to_old) {
        const int lab = all_labels[static_cast<std::size_t>(old)];
        if (lab < 0) missing.push_back(old);
        truth.push_back(lab);
    }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "missing labels for nodes:";
        for (NodeId v : missing) os << ' ' << v;
        throw ValidationError(os.str());
    }

    ExperimentReport report;
    report.master_seed = cfg.master_seed;
    report.config_hash = hash_hex(cfg.to_json());
    report.timestamp = now_iso8601();

    for (const auto& algo : cfg.roster) {
        const AlgorithmSpec spec = AlgorithmSpec::parse(algo);
        for (Approach approach : cfg.approaches) {
            CellAccumulator acc;
            for (int rep = 0; rep < cfg.replicates; ++rep) {
                try {
                    const PipelineResult res = run_approach(
                        component.graph, cfg.K, spec, approach,
                        split_seed(cfg.master_seed,
                                   static_cast<std::uint64_t>(rep)));
                    acc.reports.push_back(
                        evaluate(res, truth, cfg.K, approach));
                } catch (const NumericalError&) {
                    ++acc.failed;
                }
            }
            ReportCell cell;
            cell.scenario = "real_data";
            cell.n = component.graph.num_nodes();
            cell.algorithm = spec.name();
            cell.approach = approach_name(approach);
            cell.failed_replicates = acc.failed;
            if (!acc.reports.empty()) cell.summary = aggregate(acc.reports);
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "scenario,n,algorithm,approach,mean_count,mean_rate,stderr,replicates\n";
    for (const auto& c : cells)
        os << c.scenario << ',' << c.n << ',' << c.algorithm << ','
           << c.approach << ',' << c.summary.mean_count << ','
           << c.summary.mean_rate << ',' << c.summary.stderr_rate << ','
           << c.summary.replicates << '\n';
    return os.str();
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["master_seed"] = master_seed;
    j["config_hash"] = config_hash;
    j["timestamp"] = timestamp;
    j["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json cell;
        cell["scenario"] = c.scenario;
        cell["n"] = c.n;
        cell["algorithm"] = c.algorithm;
        cell["approach"] = c.approach;
        cell["mean_count"] = c.summary.mean_count;
        cell["mean_rate"] = c.summary.mean_rate;
        cell["stderr"] = c.summary.stderr_rate;
        cell["stderr_count"] = c.summary.stderr_count;
        cell["min_count"] = c.summary.min_count;
        cell["max_count"] = c.summary.max_count;
        cell["replicates"] = c.summary.replicates;
        cell["failed_replicates"] = c.failed_replicates;
        j["cells"].push_back(cell);
    }
    return j.dump(2);
}

const ReportCell* ExperimentReport::find(const std::string& algorithm,
                                         const std::string& approach,
                                         NodeId n) const {
    for (const auto& c : cells)
        if (c.algorithm == algorithm && c.approach == approach &&
            (n < 0 || c.n == n))
            return &c;
    return nullptr;
}

void write_scatter_svg(const Eigen::MatrixXd& features,
                       const std::vector<int>& labels,
                       const std::string& path) {
    if (features.cols() < 2)
        throw ValidationError("scatter plot needs at least two feature columns");
    const double xmin = features.col(0).minCoeff();
    const double xmax = features.col(0).maxCoeff();
    const double ymin = features.col(1).minCoeff();
    const double ymax = features.col(1).maxCoeff();
    const double w = 640, h = 480, pad = 20;
    auto sx = [&](double x) {
        return pad + (x - xmin) / std::max(xmax - xmin, 1e-12) * (w - 2 * pad);
    };
    auto sy = [&](double y) {
        return h - pad -
               (y - ymin) / std::max(ymax - ymin, 1e-12) * (h - 2 * pad);
    };
    static const char* palette[] = {"#d62728", "#ff7f0e", "#1f77b4",
                                    "#2ca02c", "#9467bd", "#8c564b"};
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w
        << "' height='" << h << "'>\n";
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        const int lab =
            i < static_cast<Eigen::Index>(labels.size()) ? labels[i] : 0;
        out << "<circle cx='" << sx(features(i, 0)) << "' cy='"
            << sy(features(i, 1)) << "' r='2.5' fill='"
            << palette[lab % 6] << "'/>\n";
    }
    out << "</svg>\n";
}

}  // namespace dcd
