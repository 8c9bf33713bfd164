#include "dcd/model.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "dcd/rng.hpp"

namespace dcd {

namespace {

// Irreducibility of a nonnegative symmetric matrix: connectivity of the
// nonzero pattern (entries > 1e-12).
bool pattern_connected(const Eigen::MatrixXd& m) {
    const int k = static_cast<int>(m.rows());
    std::vector<int> comp(k, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < k; ++w)
            if (comp[w] < 0 && std::abs(m(v, w)) > 1e-12) {
                comp[w] = 0;
                stack.push_back(w);
            }
    }
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool nonsingular(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > 1e-12 * sv(0);
}

void check_structure(const DcbmParams& p, std::vector<std::string>& errs) {
    if (p.K < 1) errs.push_back("K must be >= 1");
    if (p.B.rows() != p.K || p.B.cols() != p.K)
        errs.push_back("B must be K x K");
    const auto n = static_cast<Eigen::Index>(p.labels.size());
    if (p.theta.size() != n) errs.push_back("theta length differs from labels");
    if (p.delta.size() != n) errs.push_back("delta length differs from labels");
    if (n == 0) errs.push_back("empty node set");
}

}  // namespace

DcbmDiagnostics validate(const DcbmParams& p) {
    std::vector<std::string> errs;
    check_structure(p, errs);
    if (!errs.empty()) {
        std::ostringstream os;
        for (const auto& e : errs) os << e << "; ";
        throw ValidationError("invalid DcbmParams: " + os.str());
    }
    for (int k = 0; k < p.K; ++k)
        for (int l = 0; l < p.K; ++l)
            if (p.B(k, l) < 0.0 || p.B(k, l) > 1.0)
                errs.push_back("B(" + std::to_string(k) + "," +
                               std::to_string(l) + ") outside [0,1]");
    for (Eigen::Index i = 0; i < p.theta.size(); ++i) {
        if (!(p.theta(i) > 0.0 && p.theta(i) <= 1.0))
            errs.push_back("theta(" + std::to_string(i) + ") outside (0,1]");
        if (!(p.delta(i) > 0.0 && p.delta(i) <= 1.0))
            errs.push_back("delta(" + std::to_string(i) + ") outside (0,1]");
    }
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(p.K), 0);
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        const int c = p.labels[i];
        if (c < 0 || c >= p.K)
            errs.push_back("label(" + std::to_string(i) + ") outside [0,K)");
        else
            ++sizes[c];
    }
    for (int k = 0; k < p.K; ++k)
        if (sizes[k] == 0)
            errs.push_back("community " + std::to_string(k) + " is empty");
    if (!errs.empty()) {
        std::ostringstream os;
        for (const auto& e : errs) os << e << "; ";
        throw ValidationError("invalid DcbmParams: " + os.str());
    }

    DcbmDiagnostics d;
    const double theta_max = p.theta.maxCoeff();
    const double theta_min = p.theta.minCoeff();
    const double delta_max = p.delta.maxCoeff();
    const double delta_min = p.delta.minCoeff();
    const double theta_l1 = p.theta.lpNorm<1>();
    const double delta_l1 = p.delta.lpNorm<1>();
    const double theta_l2 = p.theta.norm();
    const double delta_l2 = p.delta.norm();

    d.Z = std::max(theta_max, delta_max) * std::max(theta_l1, delta_l1);
    d.err_n = d.Z / std::min(delta_min * delta_min * theta_l2 * theta_l2,
                             theta_min * theta_min * delta_l2 * delta_l2);

    d.theta_community_norm.assign(static_cast<std::size_t>(p.K), 0.0);
    d.delta_community_norm.assign(static_cast<std::size_t>(p.K), 0.0);
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        const int c = p.labels[i];
        d.theta_community_norm[c] += p.theta(static_cast<Eigen::Index>(i)) *
                                     p.theta(static_cast<Eigen::Index>(i));
        d.delta_community_norm[c] += p.delta(static_cast<Eigen::Index>(i)) *
                                     p.delta(static_cast<Eigen::Index>(i));
    }
    for (int k = 0; k < p.K; ++k) {
        d.theta_community_norm[k] = std::sqrt(d.theta_community_norm[k]);
        d.delta_community_norm[k] = std::sqrt(d.delta_community_norm[k]);
    }
    auto spread = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) /
               *std::min_element(v.begin(), v.end());
    };
    d.theta_norm_spread = spread(d.theta_community_norm);
    d.delta_norm_spread = spread(d.delta_community_norm);

    const Eigen::MatrixXd bbt = p.B * p.B.transpose();
    const Eigen::MatrixXd btb = p.B.transpose() * p.B;
    d.bbt_nonnegative = (bbt.array() >= 0.0).all();
    d.btb_nonnegative = (btb.array() >= 0.0).all();
    d.bbt_irreducible = pattern_connected(bbt);
    d.btb_irreducible = pattern_connected(btb);
    d.bbt_nonsingular = nonsingular(bbt);
    d.btb_nonsingular = nonsingular(btb);
    return d;
}

DirectedGraph sample_adjacency(const DcbmParams& p, std::uint64_t seed,
                               bool include_diagonal) {
    validate(p);  // bounds; irreducibility flags are not required to sample
    const NodeId n = p.n();
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i) {
        const double ti = p.theta(i);
        const int ci = p.labels[static_cast<std::size_t>(i)];
        for (NodeId j = 0; j < n; ++j) {
            if (i == j && !include_diagonal) continue;
            const double prob =
                ti * p.B(ci, p.labels[static_cast<std::size_t>(j)]) * p.delta(j);
            if (rng.bernoulli(prob)) edges.emplace_back(i, j);
        }
    }
    return DirectedGraph(n, std::move(edges));
}

Eigen::MatrixXd expected_matrix(const DcbmParams& p) {
    const NodeId n = p.n();
    if (n > kDenseLimit)
        throw ResourceError("expected_matrix: n exceeds dense limit");
    Eigen::MatrixXd omega(n, n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            omega(i, j) = p.theta(i) *
                          p.B(p.labels[static_cast<std::size_t>(i)],
                              p.labels[static_cast<std::size_t>(j)]) *
                          p.delta(j);
    return omega;
}

Eigen::MatrixXd noise_matrix(const DirectedGraph& a, const DcbmParams& p) {
    if (a.num_nodes() != p.n())
        throw ValidationError("noise_matrix: dimension mismatch");
    Eigen::MatrixXd w = -expected_matrix(p);
    for (NodeId i = 0; i < a.num_nodes(); ++i)
        for (NodeId j : a.out_neighbors(i)) w(i, j) += 1.0;
    return w;
}

TheoreticalSvd theoretical_svd(const DcbmParams& p) {
    const DcbmDiagnostics diag = validate(p);
    if (!diag.all_flags())
        throw ValidationError(
            "theoretical_svd requires BB^T and B^TB nonsingular, nonnegative "
            "and irreducible");
    const NodeId n = p.n();
    const int K = p.K;
    const double theta_l2 = p.theta.norm();
    const double delta_l2 = p.delta.norm();

    TheoreticalSvd t;
    t.psi_theta.resize(K);
    t.psi_delta.resize(K);
    for (int k = 0; k < K; ++k) {
        t.psi_theta(k) = diag.theta_community_norm[k] / theta_l2;
        t.psi_delta(k) = diag.delta_community_norm[k] / delta_l2;
    }
    t.S = t.psi_theta.asDiagonal() * p.B *
          Eigen::MatrixXd(t.psi_delta.asDiagonal()).transpose();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        t.S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    t.Y = svd.matrixU();
    t.H = svd.matrixV();
    t.lambda_s = svd.singularValues();

    // Leading pair: Perron-Frobenius gives a constant-sign leading vector;
    // flip the pair so it is positive. H_1 >= 0 implies Y_1 = S H_1/sigma_1
    // >= 0 because S is entrywise nonnegative with no zero row.
    if (t.H.col(0).sum() < 0.0) {
        t.H.col(0) *= -1.0;
        t.Y.col(0) *= -1.0;
    }
    // Remaining pairs: largest-magnitude entry of Y_k made positive.
    for (int k = 1; k < K; ++k) {
        Eigen::Index idx;
        t.Y.col(k).cwiseAbs().maxCoeff(&idx);
        if (t.Y(idx, k) < 0.0) {
            t.Y.col(k) *= -1.0;
            t.H.col(k) *= -1.0;
        }
    }

    t.sigma = theta_l2 * delta_l2 * t.lambda_s;
    t.U.resize(n, K);
    t.V.resize(n, K);
    for (NodeId i = 0; i < n; ++i) {
        const int c = p.labels[static_cast<std::size_t>(i)];
        t.U.row(i) = (p.theta(i) / diag.theta_community_norm[c]) * t.Y.row(c);
        t.V.row(i) = (p.delta(i) / diag.delta_community_norm[c]) * t.H.row(c);
    }
    return t;
}

Eigen::VectorXd sample_theta_mixture(const std::vector<MixtureAtom>& spec,
                                     NodeId n, std::uint64_t seed) {
    if (spec.empty()) throw ValidationError("empty mixture spec");
    double total = 0.0;
    for (const auto& atom : spec) {
        if (!(atom.value > 0.0 && atom.value <= 1.0))
            throw ValidationError("mixture value outside (0,1]");
        if (!(atom.mass > 0.0))
            throw ValidationError("mixture mass must be positive");
        total += atom.mass;
    }
    Rng rng(seed);
    Eigen::VectorXd out(n);
    for (NodeId i = 0; i < n; ++i) {
        double u = rng.uniform01() * total;
        double acc = 0.0;
        double value = spec.back().value;
        for (const auto& atom : spec) {
            acc += atom.mass;
            if (u < acc) {
                value = atom.value;
                break;
            }
        }
        out(i) = value;
    }
    return out;
}

std::string params_to_json(const DcbmParams& p) {
    nlohmann::json j;
    j["K"] = p.K;
    std::vector<double> b;
    for (int r = 0; r < p.K; ++r)
        for (int c = 0; c < p.K; ++c) b.push_back(p.B(r, c));
    j["B"] = b;
    j["theta"] = std::vector<double>(p.theta.data(), p.theta.data() + p.theta.size());
    j["delta"] = std::vector<double>(p.delta.data(), p.delta.data() + p.delta.size());
    j["labels"] = p.labels;
    return j.dump(2);
}

DcbmParams params_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("params config: ") + e.what());
    }
    DcbmParams p;
    p.K = j.at("K").get<int>();
    const auto b = j.at("B").get<std::vector<double>>();
    if (static_cast<int>(b.size()) != p.K * p.K)
        throw ParseError("B must hold K*K row-major entries");
    p.B.resize(p.K, p.K);
    for (int r = 0; r < p.K; ++r)
        for (int c = 0; c < p.K; ++c) p.B(r, c) = b[r * p.K + c];

    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    NodeId n = j.value("n", NodeId{0});

    auto parse_spec = [](const nlohmann::json& arr) {
        std::vector<MixtureAtom> spec;
        for (const auto& pair : arr)
            spec.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
        return spec;
    };

    if (j.contains("theta")) {
        const auto v = j["theta"].get<std::vector<double>>();
        p.theta = Eigen::Map<const Eigen::VectorXd>(v.data(),
                                                    static_cast<Eigen::Index>(v.size()));
        n = static_cast<NodeId>(v.size());
    } else if (j.contains("theta_spec")) {
        if (n <= 0) throw ParseError("n is required with theta_spec");
        p.theta = sample_theta_mixture(parse_spec(j["theta_spec"]), n,
                                       split_seed(seed, 0));
    } else {
        throw ParseError("config needs theta or theta_spec");
    }

    if (j.contains("delta")) {
        const auto v = j["delta"].get<std::vector<double>>();
        p.delta = Eigen::Map<const Eigen::VectorXd>(v.data(),
                                                    static_cast<Eigen::Index>(v.size()));
    } else if (j.value("delta_same_as_theta", false)) {
        p.delta = p.theta;
    } else if (j.contains("delta_spec")) {
        p.delta = sample_theta_mixture(parse_spec(j["delta_spec"]), n,
                                       split_seed(seed, 1));
    } else {
        throw ParseError("config needs delta, delta_spec or delta_same_as_theta");
    }

    if (j.contains("labels")) {
        p.labels = j["labels"].get<std::vector<int>>();
    } else if (j.contains("label_proportions")) {
        const auto props = j["label_proportions"].get<std::vector<double>>();
        if (static_cast<int>(props.size()) != p.K)
            throw ParseError("label_proportions must have K entries");
        const double total = std::accumulate(props.begin(), props.end(), 0.0);
        Rng rng(split_seed(seed, 2));
        p.labels.resize(static_cast<std::size_t>(n));
        for (auto& lab : p.labels) {
            double u = rng.uniform01() * total;
            double acc = 0.0;
            lab = p.K - 1;
            for (int k = 0; k < p.K; ++k) {
                acc += props[k];
                if (u < acc) {
                    lab = k;
                    break;
                }
            }
        }
        // guarantee every community nonempty
        std::vector<std::int64_t> sizes(static_cast<std::size_t>(p.K), 0);
        for (int lab : p.labels) ++sizes[static_cast<std::size_t>(lab)];
        const bool has_empty =
            std::any_of(sizes.begin(), sizes.end(), [](auto s) { return s == 0; });
        if (has_empty && static_cast<NodeId>(p.labels.size()) >= p.K)
            for (int k = 0; k < p.K; ++k) p.labels[static_cast<std::size_t>(k)] = k;
    } else {
        throw ParseError("config needs labels or label_proportions");
    }
    return p;
}

}  // namespace dcd
