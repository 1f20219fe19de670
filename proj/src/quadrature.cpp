#include "eigenbound/quadrature.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eigenbound/errors.hpp"

namespace eigenbound {

void gauss_jacobi_01(int k, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    if (k < 1) throw InputError("gauss_jacobi_01: need at least one point");
    const double a = alpha, b = 0.0;

    // Golub-Welsch on the monic Jacobi recurrence for weight (1-x)^a on [-1,1]
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        const double den = (2 * i + a + b) * (2 * i + a + b + 2);
        J(i, i) = den != 0 ? (b * b - a * a) / den : 0.0;
    }
    for (int i = 1; i < k; ++i) {
        const double num = 4.0 * i * (i + a) * (i + b) * (i + a + b);
        const double den =
            std::pow(2 * i + a + b, 2) * (2 * i + a + b + 1) * (2 * i + a + b - 1);
        const double off = std::sqrt(num / den);
        J(i, i - 1) = off;
        J(i - 1, i) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("gauss_jacobi_01: tridiagonal eigensolve failed");

    const double mu0 = std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) /
                       std::tgamma(a + b + 2);
    nodes.resize(k);
    weights.resize(k);
    for (int i = 0; i < k; ++i) {
        nodes[i] = (es.eigenvalues()[i] + 1.0) / 2.0;  // map [-1,1] -> [0,1]
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0 * std::pow(2.0, -a - 1);
    }
}

SimplexRule simplex_rule(int dim, int points_per_axis) {
    if (dim < 1) throw InputError("simplex_rule: dimension must be positive");
    const int k = points_per_axis;

    std::vector<Eigen::VectorXd> axis_nodes(dim), axis_weights(dim);
    for (int j = 0; j < dim; ++j)
        gauss_jacobi_01(k, static_cast<double>(dim - 1 - j), axis_nodes[j], axis_weights[j]);

    const int total = static_cast<int>(std::pow(k, dim));
    SimplexRule rule;
    rule.points.resize(total, dim);
    rule.weights.resize(total);
    rule.degree = 2 * k - 1;

    std::vector<int> idx(dim, 0);
    for (int node = 0; node < total; ++node) {
        double w = 1.0;
        double remaining = 1.0;
        for (int j = 0; j < dim; ++j) {
            const double t = axis_nodes[j][idx[j]];
            w *= axis_weights[j][idx[j]];
            rule.points(node, j) = t * remaining;  // collapsed coordinates
            remaining *= (1.0 - t);
        }
        rule.weights[node] = w;
        for (int j = dim - 1; j >= 0; --j) {
            if (++idx[j] < k) break;
            idx[j] = 0;
        }
    }
    return rule;
}

namespace {

struct Cell {
    Eigen::MatrixXd verts;  // (dim+1) x dim, one vertex per row
    double volume = 0.0;
    int depth = 0;
};

double simplex_volume(const Eigen::MatrixXd& verts) {
    const int n = static_cast<int>(verts.cols());
    Eigen::MatrixXd E(n, n);
    for (int j = 0; j < n; ++j) E.col(j) = (verts.row(j + 1) - verts.row(0)).transpose();
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return std::abs(E.determinant()) / fact;
}

std::pair<Cell, Cell> bisect_longest_edge(const Cell& cell) {
    const int nv = static_cast<int>(cell.verts.rows());
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) {
            const double len = (cell.verts.row(i) - cell.verts.row(j)).squaredNorm();
            if (len > best) {
                best = len;
                bi = i;
                bj = j;
            }
        }
    const Eigen::RowVectorXd mid = 0.5 * (cell.verts.row(bi) + cell.verts.row(bj));
    Cell left = cell, right = cell;
    left.verts.row(bj) = mid;
    right.verts.row(bi) = mid;
    left.volume = right.volume = 0.5 * cell.volume;
    left.depth = right.depth = cell.depth + 1;
    return {std::move(left), std::move(right)};
}

class AdaptiveIntegrator {
  public:
    AdaptiveIntegrator(int dim, int size, const MatrixIntegrand& f, const QuadratureOptions& opt,
                       double total_volume)
        : dim_(dim),
          size_(size),
          f_(f),
          opt_(opt),
          total_volume_(total_volume),
          high_(simplex_rule(dim, 4)),  // degree 7
          low_(simplex_rule(dim, 3)) {} // degree 5 companion

    Eigen::MatrixXd integrate_cell(const Cell& cell, QuadratureReport& report) const {
        Eigen::MatrixXd q_high = apply_rule(high_, cell, report);
        const Eigen::MatrixXd q_low = apply_rule(low_, cell, report);
        const double err = (q_high - q_low).cwiseAbs().maxCoeff();
        report.max_depth_reached = std::max(report.max_depth_reached, cell.depth);

        const double budget = opt_.tol * cell.volume / total_volume_;
        if (err <= budget) {
            report.est_error += err;
            return q_high;
        }
        if (cell.depth >= opt_.max_depth) {
            ++report.depth_cap_hits;
            report.est_error += err;
            return q_high;
        }
        auto [left, right] = bisect_longest_edge(cell);
        return integrate_cell(left, report) + integrate_cell(right, report);
    }

  private:
    Eigen::MatrixXd apply_rule(const SimplexRule& rule, const Cell& cell,
                               QuadratureReport& report) const {
        Eigen::MatrixXd E(dim_, dim_);
        for (int j = 0; j < dim_; ++j)
            E.col(j) = (cell.verts.row(j + 1) - cell.verts.row(0)).transpose();
        const double jac = std::abs(E.determinant());

        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(size_, size_);
        Eigen::MatrixXd value(size_, size_);
        Eigen::VectorXd x(dim_);
        for (int node = 0; node < rule.points.rows(); ++node) {
            x = cell.verts.row(0).transpose() + E * rule.points.row(node).transpose();
            f_(x, value);
            sum.noalias() += (jac * rule.weights[node]) * value;
        }
        report.evaluations += rule.points.rows();
        return sum;
    }

    int dim_;
    int size_;
    const MatrixIntegrand& f_;
    QuadratureOptions opt_;
    double total_volume_;
    SimplexRule high_;
    SimplexRule low_;
};

std::vector<Cell> root_cells(const std::vector<Simplex>& triangulation, int dim) {
    std::vector<Cell> roots;
    roots.reserve(triangulation.size());
    for (const auto& S : triangulation) {
        Cell c;
        c.verts.resize(dim + 1, dim);
        for (int i = 0; i <= dim; ++i)
            for (int j = 0; j < dim; ++j) c.verts(i, j) = to_double(S.vertices[i][j]);
        c.volume = simplex_volume(c.verts);
        c.depth = 0;
        roots.push_back(std::move(c));
    }
    return roots;
}

void finalize_report(QuadratureReport& report, const QuadratureOptions& opt) {
    if (report.depth_cap_hits > 0)
        report.warnings.push_back("bisection depth cap " + std::to_string(opt.max_depth) +
                                  " hit in " + std::to_string(report.depth_cap_hits) +
                                  " cells; estimated error " + std::to_string(report.est_error));
}

// Fixed pre-split depth for the parallel path; constant so that results are
// independent of the thread count.
constexpr int kPreSplitDepth = 5;

}  // namespace

Eigen::MatrixXd integrate_adaptive_serial(const std::vector<Simplex>& triangulation, int size,
                                          const MatrixIntegrand& f, const QuadratureOptions& opt,
                                          QuadratureReport& report) {
    if (triangulation.empty()) throw InputError("integrate_adaptive: empty triangulation");
    const int dim = triangulation.front().dim();
    auto roots = root_cells(triangulation, dim);
    double total_volume = 0;
    for (const auto& c : roots) total_volume += c.volume;

    const AdaptiveIntegrator integrator(dim, size, f, opt, total_volume);
    Eigen::MatrixXd result = Eigen::MatrixXd::Zero(size, size);
    for (const auto& cell : roots) result += integrator.integrate_cell(cell, report);
    finalize_report(report, opt);
    return result;
}

Eigen::MatrixXd integrate_adaptive_parallel(const std::vector<Simplex>& triangulation, int size,
                                            const MatrixIntegrand& f, const QuadratureOptions& opt,
                                            QuadratureReport& report) {
    if (triangulation.empty()) throw InputError("integrate_adaptive: empty triangulation");
    const int dim = triangulation.front().dim();
    auto roots = root_cells(triangulation, dim);
    double total_volume = 0;
    for (const auto& c : roots) total_volume += c.volume;

    std::vector<Cell> tasks = std::move(roots);
    for (int level = 0; level < kPreSplitDepth; ++level) {
        std::vector<Cell> next;
        next.reserve(tasks.size() * 2);
        for (const auto& cell : tasks) {
            auto [left, right] = bisect_longest_edge(cell);
            next.push_back(std::move(left));
            next.push_back(std::move(right));
        }
        tasks = std::move(next);
    }

    const AdaptiveIntegrator integrator(dim, size, f, opt, total_volume);
    const int ntasks = static_cast<int>(tasks.size());
    std::vector<Eigen::MatrixXd> partial(ntasks);
    std::vector<QuadratureReport> reports(ntasks);

    // exceptions must not escape the parallel region; collect and rethrow
    bool failed = false;
    std::string failure;

#ifdef _OPENMP
    omp_set_num_threads(std::max(1, opt.threads));
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < ntasks; ++t) {
        if (failed) continue;
        try {
            partial[t] = integrator.integrate_cell(tasks[t], reports[t]);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw ValidationError(failure);

    Eigen::MatrixXd result = Eigen::MatrixXd::Zero(size, size);
    for (int t = 0; t < ntasks; ++t) {
        result += partial[t];  // deterministic order, independent of threads
        report.evaluations += reports[t].evaluations;
        report.max_depth_reached = std::max(report.max_depth_reached, reports[t].max_depth_reached);
        report.depth_cap_hits += reports[t].depth_cap_hits;
        report.est_error += reports[t].est_error;
    }
    finalize_report(report, opt);
    return result;
}

Eigen::MatrixXd integrate_adaptive(const std::vector<Simplex>& triangulation, int size,
                                   const MatrixIntegrand& f, const QuadratureOptions& opt,
                                   QuadratureReport& report) {
    if (opt.threads > 1)
        return integrate_adaptive_parallel(triangulation, size, f, opt, report);
    return integrate_adaptive_serial(triangulation, size, f, opt, report);
}

}  // namespace eigenbound
