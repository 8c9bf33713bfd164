#include "dcd/ratio.hpp"

#include <cmath>

namespace dcd {

namespace {

double clamp_ratio(double num, double den, double t_n) {
    if (den == 0.0) {
        // sign of +-infinity; 0/0 -> 0
        if (num == 0.0) return 0.0;
        return num > 0.0 ? t_n : -t_n;
    }
    const double r = num / den;
    if (r > t_n) return t_n;
    if (r < -t_n) return -t_n;
    return r;
}

double lq_norm(const Eigen::RowVectorXd& row, int q) {
    if (q == 2) return row.norm();
    if (q == 1) return row.lpNorm<1>();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < row.size(); ++k)
        acc += std::pow(std::abs(row(k)), q);
    return std::pow(acc, 1.0 / q);
}

void first_entry_ratios(const Eigen::MatrixXd& m, double t_n,
                        Eigen::Ref<Eigen::MatrixXd> out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 1; k < m.cols(); ++k)
            out(i, k - 1) = clamp_ratio(m(i, k), m(i, 0), t_n);
}

void row_norm_ratios(const Eigen::MatrixXd& m, int q, double t_n,
                     Eigen::Ref<Eigen::MatrixXd> out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double norm = lq_norm(m.row(i), q);
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            out(i, k) = clamp_ratio(m(i, k), norm, t_n);
    }
}

void check_config(const RatioConfig& cfg) {
    if (!(cfg.T_n > 0.0)) throw ValidationError("T_n must be positive");
    if (cfg.q < 1) throw ValidationError("q must be a positive integer");
}

}  // namespace

RatioMatrix dscore_ratio(const SingularTriple& sv, const RatioConfig& cfg) {
    check_config(cfg);
    const Eigen::Index K = sv.U.cols();
    if (K < 2) throw ValidationError("dscore_ratio requires K >= 2");
    RatioMatrix r{Eigen::MatrixXd(sv.U.rows(), 2 * (K - 1)), RatioKind::dscore,
                  cfg};
    first_entry_ratios(sv.U, cfg.T_n, r.data.leftCols(K - 1));
    first_entry_ratios(sv.V, cfg.T_n, r.data.rightCols(K - 1));
    return r;
}

RatioMatrix dscoreq_ratio(const SingularTriple& sv, const RatioConfig& cfg) {
    check_config(cfg);
    const Eigen::Index K = sv.U.cols();
    RatioMatrix r{Eigen::MatrixXd(sv.U.rows(), 2 * K), RatioKind::dscoreq, cfg};
    row_norm_ratios(sv.U, cfg.q, cfg.T_n, r.data.leftCols(K));
    row_norm_ratios(sv.V, cfg.q, cfg.T_n, r.data.rightCols(K));
    return r;
}

RatioMatrix oracle_dscore_ratio(const TheoreticalSvd& t, const RatioConfig& cfg) {
    check_config(cfg);
    if ((t.U.col(0).array() <= 0.0).any() || (t.V.col(0).array() <= 0.0).any())
        throw ValidationError(
            "oracle_dscore_ratio: leading singular vector not strictly positive");
    const Eigen::Index K = t.U.cols();
    if (K < 2) throw ValidationError("oracle_dscore_ratio requires K >= 2");
    RatioMatrix r{Eigen::MatrixXd(t.U.rows(), 2 * (K - 1)), RatioKind::dscore,
                  cfg};
    first_entry_ratios(t.U, cfg.T_n, r.data.leftCols(K - 1));
    first_entry_ratios(t.V, cfg.T_n, r.data.rightCols(K - 1));
    return r;
}

RatioMatrix oracle_dscoreq_ratio(const TheoreticalSvd& t,
                                 const RatioConfig& cfg) {
    check_config(cfg);
    RatioMatrix r{Eigen::MatrixXd(t.U.rows(), 2 * t.U.cols()),
                  RatioKind::dscoreq, cfg};
    row_norm_ratios(t.U, cfg.q, cfg.T_n, r.data.leftCols(t.U.cols()));
    row_norm_ratios(t.V, cfg.q, cfg.T_n, r.data.rightCols(t.V.cols()));
    return r;
}

}  // namespace dcd
