// Command-line frontend: generation, decomposition, clustering, evaluation
// and experiment runs. Exit codes: 0 success, 1 validation/input error,
// 2 numerical failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dcd/harness.hpp"
#include "dcd/rng.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dcd::ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dcd::ParseError("cannot write " + path);
    return out;
}

dcd::DirectedGraph load_graph(const std::string& path, int base) {
    std::ifstream in(path);
    if (!in) throw dcd::ParseError("cannot open " + path);
    return dcd::from_edge_list(in, base, true);
}

// labels indexed by node id; n = max id + 1 across the file
std::vector<int> load_labels(const std::string& path, int base) {
    std::ifstream probe(path);
    if (!probe) throw dcd::ParseError("cannot open " + path);
    std::string line;
    long long max_id = -1;
    std::size_t line_no = 0;
    while (std::getline(probe, line)) {
        ++line_no;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long id, lab;
        if (!(ls >> id >> lab))
            throw dcd::ParseError("malformed label at line " +
                                  std::to_string(line_no));
        max_id = std::max(max_id, id - base);
    }
    std::ifstream in(path);
    return dcd::read_label_file(in, base,
                                static_cast<dcd::NodeId>(max_id + 1));
}

void write_labels(std::ostream& out, const std::vector<int>& labels,
                  int base) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << (static_cast<long long>(i) + base) << ' ' << labels[i] << '\n';
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out << (c ? "," : "") << m(r, c);
        out << '\n';
    }
}

dcd::PipelineResult run_with_approach(const dcd::DirectedGraph& g, int k,
                                      const dcd::AlgorithmSpec& spec,
                                      dcd::Approach approach,
                                      std::uint64_t seed) {
    switch (approach) {
        case dcd::Approach::entire:
            return dcd::run_entire(g, k, spec, seed);
        case dcd::Approach::intersection_attach:
            return dcd::run_intersection_attach(g, k, spec, seed);
        case dcd::Approach::core_only:
            return dcd::run_core_only(g, k, spec, seed);
    }
    throw dcd::ValidationError("unreachable approach");
}

int cmd_generate(const std::string& config, std::uint64_t seed, int base,
                 const std::string& out_path,
                 const std::string& labels_path) {
    dcd::DcbmParams params = dcd::params_from_json(slurp(config));
    const dcd::DirectedGraph g = dcd::sample_adjacency(params, seed, false);
    auto out = open_out(out_path);
    dcd::to_edge_list(g, out, base);
    if (!labels_path.empty()) {
        auto lout = open_out(labels_path);
        write_labels(lout, params.labels, base);
    }
    std::cout << "generated " << g.num_nodes() << " nodes, " << g.num_edges()
              << " edges\n";
    return 0;
}

int cmd_svd(const std::string& edges, int base, int k, double tol,
            bool regularized, std::optional<double> tau, std::uint64_t seed,
            const std::string& out_path) {
    const dcd::DirectedGraph g = load_graph(edges, base);
    dcd::SvdOptions opts;
    opts.tol = tol;
    opts.seed = dcd::split_seed(seed, 1);
    const Eigen::SparseMatrix<double> m =
        regularized ? dcd::regularized_laplacian(g, dcd::LaplacianConfig{tau})
                    : dcd::adjacency_matrix(g);
    const dcd::SingularTriple sv = dcd::top_k_svd(m, k, opts);
    std::vector<std::string> header;
    for (int i = 1; i <= k; ++i) header.push_back("u" + std::to_string(i));
    for (int i = 1; i <= k; ++i) header.push_back("v" + std::to_string(i));
    Eigen::MatrixXd uv(g.num_nodes(), 2 * k);
    uv << sv.U, sv.V;
    auto out = open_out(out_path);
    write_matrix_csv(out, uv, header);
    std::cout << "sigma";
    for (int i = 0; i < k; ++i) std::cout << ' ' << sv.sigma(i);
    std::cout << '\n';
    if (sv.degenerate_gap) std::cerr << "warning: degenerate singular gap\n";
    return 0;
}

int cmd_ratio(const std::string& edges, int base, int k,
              const std::string& algo, std::uint64_t seed,
              const std::string& out_path) {
    const dcd::DirectedGraph g = load_graph(edges, base);
    const dcd::AlgorithmSpec spec = dcd::AlgorithmSpec::parse(algo);
    const dcd::PipelineResult res = dcd::run_entire(g, k, spec, seed);
    std::vector<std::string> header;
    for (Eigen::Index c = 0; c < res.features.cols(); ++c)
        header.push_back("r" + std::to_string(c + 1));
    auto out = open_out(out_path);
    write_matrix_csv(out, res.features, header);
    return 0;
}

int cmd_cluster(const std::string& edges, int base, int k,
                const std::string& algo, const std::string& approach,
                std::uint64_t seed, const std::string& out_path,
                const std::string& plot_path) {
    const dcd::DirectedGraph g = load_graph(edges, base);
    const dcd::AlgorithmSpec spec = dcd::AlgorithmSpec::parse(algo);
    const dcd::Approach app = dcd::approach_from_name(approach);
    const dcd::PipelineResult res = run_with_approach(g, k, spec, app, seed);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    auto out = open_out(out_path);
    if (app == dcd::Approach::core_only) {
        for (dcd::NodeId v : res.core.members())
            out << (static_cast<long long>(v) + base) << ' '
                << res.labels[static_cast<std::size_t>(v)] << '\n';
    } else {
        write_labels(out, res.labels, base);
    }
    if (!plot_path.empty()) {
        std::vector<int> core_labels;
        for (dcd::NodeId v : res.core.members())
            core_labels.push_back(res.labels[static_cast<std::size_t>(v)]);
        dcd::write_scatter_svg(res.features, core_labels, plot_path);
    }
    std::cout << "clustered " << res.core.size() << " core nodes, attached "
              << res.attached.size() << '\n';
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path,
             int base, int k) {
    const auto pred = load_labels(pred_path, base);
    const auto truth = load_labels(truth_path, base);
    if (pred.size() != truth.size())
        throw dcd::ValidationError("label files cover different node ranges");
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] < 0 || truth[i] < 0)
            throw dcd::ValidationError("node " + std::to_string(i) +
                                       " is unlabeled");
    const dcd::EvalReport r = dcd::misclustering(pred, truth, k);
    std::cout << "misclustered " << r.misclustered << " rate " << r.rate
              << '\n';
    return 0;
}

int cmd_simulate(const std::string& config, std::optional<std::uint64_t> seed,
                 const std::string& out_path, const std::string& json_path,
                 const std::string& plot_path) {
    dcd::ExperimentConfig cfg = dcd::ExperimentConfig::from_json(slurp(config));
    if (seed) cfg.master_seed = *seed;
    const dcd::ExperimentReport report = dcd::run_simulation(cfg);
    if (!out_path.empty()) open_out(out_path) << report.to_csv();
    if (!json_path.empty()) open_out(json_path) << report.to_json();
    if (out_path.empty() && json_path.empty()) std::cout << report.to_csv();
    if (!plot_path.empty()) {
        // one representative draw: first grid size, first roster entry
        const dcd::NodeId n = cfg.n_grid.front();
        const std::uint64_t rep_seed = dcd::split_seed(cfg.master_seed, 0);
        const dcd::DcbmParams params = dcd::scenario_params(
            cfg.scenario, n, dcd::split_seed(rep_seed, 10));
        const dcd::DirectedGraph a0 =
            dcd::sample_adjacency(params, dcd::split_seed(rep_seed, 11));
        const dcd::Subgraph comp =
            dcd::induced_subgraph(a0, dcd::largest_weak_component(a0));
        const dcd::PipelineResult res = dcd::run_entire(
            comp.graph, params.K, dcd::AlgorithmSpec::parse(cfg.roster.front()),
            dcd::split_seed(rep_seed, 12));
        std::vector<int> truth;
        for (dcd::NodeId old : comp.to_old)
            truth.push_back(params.labels[static_cast<std::size_t>(old)]);
        dcd::write_scatter_svg(res.features, truth, plot_path);
    }
    for (const auto& cell : report.cells)
        if (cell.failed_replicates > 0)
            std::cerr << "warning: " << cell.failed_replicates
                      << " failed replicates for " << cell.algorithm << '/'
                      << cell.approach << " at n=" << cell.n << '\n';
    return 0;
}

int cmd_realdata(const std::string& edges, const std::string& labels, int base,
                 int k, const std::vector<std::string>& roster, int reps,
                 std::uint64_t seed, const std::string& out_path,
                 const std::string& json_path, const std::string& plot_path) {
    dcd::ExperimentConfig cfg;
    cfg.scenario = dcd::Scenario::real_data;
    cfg.edge_file = edges;
    cfg.label_file = labels;
    cfg.base = base;
    cfg.K = k;
    cfg.roster = roster;
    cfg.replicates = reps;
    cfg.master_seed = seed;
    cfg.approaches = {dcd::Approach::entire,
                      dcd::Approach::intersection_attach,
                      dcd::Approach::core_only};
    const dcd::ExperimentReport report = dcd::run_real(cfg);
    if (!out_path.empty()) open_out(out_path) << report.to_csv();
    if (!json_path.empty()) open_out(json_path) << report.to_json();
    if (out_path.empty() && json_path.empty()) std::cout << report.to_csv();
    if (!plot_path.empty()) {
        const dcd::DirectedGraph g = load_graph(edges, base);
        const dcd::Subgraph comp =
            dcd::induced_subgraph(g, dcd::largest_weak_component(g));
        const auto all = load_labels(labels, base);
        const dcd::PipelineResult res = dcd::run_entire(
            comp.graph, k, dcd::AlgorithmSpec::parse(roster.front()),
            dcd::split_seed(seed, 0));
        std::vector<int> truth;
        for (dcd::NodeId old : comp.to_old)
            truth.push_back(std::max(all[static_cast<std::size_t>(old)], 0));
        dcd::write_scatter_svg(res.features, truth, plot_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral community detection for directed networks"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int base = 0;
    int k = 2;
    double tol = 1e-10;
    int reps = 50;
    bool regularized = false;
    std::optional<double> tau;
    std::optional<std::uint64_t> sim_seed;
    std::string config, edges, labels, pred, truth, out, json_out, plot;
    std::string algo = "dscore";
    std::string approach = "entire";
    std::vector<std::string> roster{"dscore"};

    auto* gen = app.add_subcommand("generate",
                                   "Sample an adjacency matrix from a "
                                   "model config");
    gen->add_option("--config", config, "model parameter JSON file")
        ->required();
    gen->add_option("--seed", seed, "sampling seed");
    gen->add_option("--base", base, "node id base of the output (0 or 1)");
    gen->add_option("--out", out, "edge-list output path")->required();
    gen->add_option("--labels-out", labels, "also write true labels here");

    auto* svd = app.add_subcommand("svd", "Leading singular pairs as CSV");
    svd->add_option("--edges", edges, "edge-list input")->required();
    svd->add_option("--base", base, "node id base of the input");
    svd->add_option("--k", k, "number of singular pairs");
    svd->add_option("--tol", tol, "iteration tolerance");
    svd->add_flag("--regularized", regularized,
                  "decompose the regularized Laplacian instead of A");
    svd->add_option("--tau", tau, "Laplacian regularizer (default: avg degree)");
    svd->add_option("--seed", seed, "iteration seed");
    svd->add_option("--out", out, "CSV output path")->required();

    auto* ratio = app.add_subcommand("ratio", "Ratio feature matrix as CSV");
    ratio->add_option("--edges", edges, "edge-list input")->required();
    ratio->add_option("--base", base, "node id base of the input");
    ratio->add_option("--k", k, "number of communities");
    ratio->add_option("--algo", algo, "algorithm name, e.g. dscore, dscore2");
    ratio->add_option("--seed", seed, "iteration seed");
    ratio->add_option("--out", out, "CSV output path")->required();

    auto* cluster = app.add_subcommand("cluster", "Cluster one graph");
    cluster->add_option("--edges", edges, "edge-list input")->required();
    cluster->add_option("--base", base, "node id base of the input");
    cluster->add_option("--k", k, "number of communities");
    cluster->add_option("--algo", algo, "algorithm name");
    cluster->add_option("--approach", approach,
                        "entire | intersection_attach | core_only");
    cluster->add_option("--seed", seed, "clustering seed");
    cluster->add_option("--out", out, "label output path")->required();
    cluster->add_option("--plot", plot, "feature scatter SVG path");

    auto* eval = app.add_subcommand("eval", "Compare two label files");
    eval->add_option("--pred", pred, "predicted labels")->required();
    eval->add_option("--truth", truth, "reference labels")->required();
    eval->add_option("--base", base, "node id base of both files");
    eval->add_option("--k", k, "number of communities");

    auto* sim = app.add_subcommand("simulate", "Run a synthetic experiment");
    sim->add_option("--config", config, "experiment config JSON")->required();
    sim->add_option("--seed", sim_seed, "override the config master seed");
    sim->add_option("--out", out, "CSV report path (default: stdout)");
    sim->add_option("--json", json_out, "JSON report path");
    sim->add_option("--plot", plot, "scatter SVG of one replicate");

    auto* real = app.add_subcommand("realdata",
                                    "Run all approaches on a labeled graph");
    real->add_option("--edges", edges, "edge-list input")->required();
    real->add_option("--labels", labels, "true label file")->required();
    real->add_option("--base", base, "node id base of the inputs");
    real->add_option("--k", k, "number of communities");
    real->add_option("--algo", roster, "algorithm names (repeatable)");
    real->add_option("--reps", reps, "replicates per cell");
    real->add_option("--seed", seed, "master seed");
    real->add_option("--out", out, "CSV report path (default: stdout)");
    real->add_option("--json", json_out, "JSON report path");
    real->add_option("--plot", plot, "feature scatter SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(config, seed, base, out, labels);
        if (svd->parsed())
            return cmd_svd(edges, base, k, tol, regularized, tau, seed, out);
        if (ratio->parsed())
            return cmd_ratio(edges, base, k, algo, seed, out);
        if (cluster->parsed())
            return cmd_cluster(edges, base, k, algo, approach, seed, out, plot);
        if (eval->parsed()) return cmd_eval(pred, truth, base, k);
        if (sim->parsed())
            return cmd_simulate(config, sim_seed, out, json_out, plot);
        if (real->parsed())
            return cmd_realdata(edges, labels, base, k, roster, reps, seed,
                                out, json_out, plot);
    } catch (const dcd::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
