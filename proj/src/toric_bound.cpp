#include "eigenbound/toric_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "eigenbound/errors.hpp"

namespace eigenbound {

namespace {

constexpr double kDegenerateTol = 1e-12;   // ||Phi||^2 below this * |a|^4 is degenerate
constexpr double kValueTol = 1e-12;        // relative convergence tolerance on the value

struct RatioEval {
    double ratio;        // (sum c^2 + 4 s^2/vol) / ||Phi||^2
    double numerator;    // sum c^2 + 4 s^2/vol
    double denominator;  // ||Phi||^2
    double phi4;
    double sum_c_sq;
    bool degenerate;
};

RatioEval evaluate_ratio(const QuarticForms& F, const Eigen::VectorXd& a) {
    const int n = F.n;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) c[i] += F.t3w(i, j, k) * a[j] * a[k];
    double phi4 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) phi4 += F.t4w(i, j, k, l) * a[i] * a[j] * a[k] * a[l];
    const double s = a.squaredNorm();
    const double sum_c_sq = c.squaredNorm();
    const double denom = phi4 - sum_c_sq - s * s / F.vol;
    const double numer = sum_c_sq + 4.0 * s * s / F.vol;
    RatioEval ev;
    ev.phi4 = phi4;
    ev.sum_c_sq = sum_c_sq;
    ev.numerator = numer;
    ev.denominator = denom;
    ev.degenerate = !(denom > kDegenerateTol * s * s);
    ev.ratio = ev.degenerate ? std::numeric_limits<double>::infinity() : numer / denom;
    return ev;
}

// gradient of the ratio at a (not projected)
Eigen::VectorXd ratio_gradient(const QuarticForms& F, const Eigen::VectorXd& a,
                               const RatioEval& ev) {
    const int n = F.n;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd Ta = Eigen::MatrixXd::Zero(n, n);  // row i: (T_i a)_j
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                c[i] += F.t3w(i, j, k) * a[j] * a[k];
                Ta(i, j) += F.t3w(i, j, k) * a[k];
            }
    Eigen::VectorXd qaaa = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) qaaa[l] += F.t4w(i, j, k, l) * a[i] * a[j] * a[k];
    const double s = a.squaredNorm();
    const Eigen::VectorXd grad_c2 = 4.0 * Ta.transpose() * c;
    const Eigen::VectorXd grad_n = grad_c2 + (16.0 * s / F.vol) * a;
    const Eigen::VectorXd grad_d = 4.0 * qaaa - grad_c2 - (4.0 * s / F.vol) * a;
    return (grad_n - ev.ratio * grad_d) / ev.denominator;
}

std::vector<Eigen::VectorXd> deterministic_starts(int n) {
    std::vector<Eigen::VectorXd> starts;
    if (n == 1) {
        starts.push_back(Eigen::VectorXd::Ones(1));
        return starts;
    }
    for (int i = 0; i < n; ++i) starts.push_back(Eigen::VectorXd::Unit(n, i));
    // diagonal sign patterns, first component positive (a and -a are equivalent)
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        Eigen::VectorXd a(n);
        a[0] = 1.0;
        for (int i = 1; i < n; ++i) a[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
        starts.push_back(a.normalized());
    }
    const int target = 2 * n * n + 8;
    const int fill = std::max(0, target - static_cast<int>(starts.size()));
    if (n == 2) {
        for (int j = 0; j < fill; ++j) {
            const double theta = M_PI * (j + 0.5) / fill;
            starts.push_back(Eigen::Vector2d(std::cos(theta), std::sin(theta)));
        }
    } else if (n == 3) {
        // Fibonacci covering of the upper hemisphere
        const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
        for (int j = 0; j < fill; ++j) {
            const double z = (j + 0.5) / fill;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden_angle * j;
            starts.push_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
        }
    } else {
        std::mt19937_64 rng(0x45494745ULL);  // fixed seed: deterministic runs
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int j = 0; j < fill; ++j) {
            Eigen::VectorXd a(n);
            for (int i = 0; i < n; ++i) a[i] = gauss(rng);
            starts.push_back(a.normalized());
        }
    }
    return starts;
}

void canonicalize_sign(Eigen::VectorXd& a) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > 1e-12) {
            if (a[i] < 0) a = -a;
            return;
        }
    }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - 1e-14) return true;
        if (a[i] > b[i] + 1e-14) return false;
    }
    return false;
}

}  // namespace

WhitenedBasis whiten(const MomentTensor& M, double m1_tolerance) {
    const int n = M.dim;
    if (m1_tolerance == 0.0) {
        for (int i = 0; i < n; ++i)
            if (M.m1[i] != 0)
                throw ValidationError(
                    "whiten: barycenter is not the origin (Futaki obstruction / re-center "
                    "required)");
    } else {
        const double scale =
            std::pow(to_double(M.vol), (static_cast<double>(n) + 1.0) / static_cast<double>(n));
        for (int i = 0; i < n; ++i)
            if (std::abs(to_double(M.m1[i])) > m1_tolerance * scale)
                throw ValidationError("whiten: first moments exceed tolerance (re-center required)");
    }

    const Eigen::MatrixXd G = to_double_matrix(M.gram);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("whiten: eigendecomposition of the Gram matrix failed");
    if (es.eigenvalues().minCoeff() <= 0)
        throw ValidationError("whiten: Gram matrix is not positive definite (degenerate region)");

    WhitenedBasis W;
    W.transform = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().transpose();
    W.provenance = M;

    const double residual = (W.transform.transpose() * G * W.transform -
                             Eigen::MatrixXd::Identity(n, n))
                                .cwiseAbs()
                                .maxCoeff();
    if (residual > 1e-12)
        throw ConvergenceError("whiten: L^T G L deviates from identity by " +
                               std::to_string(residual));
    return W;
}

QuarticForms quartic_forms(const MomentTensor& M, const WhitenedBasis& W) {
    const int n = M.dim;
    const Eigen::MatrixXd& L = W.transform;
    QuarticForms F;
    F.n = n;
    F.vol = to_double(M.vol);
    F.t3w = SymTensor3<double>(n);
    F.t4w = SymTensor4<double>(n);

    SymTensor3<double> t3(n);
    SymTensor4<double> t4(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) t3(i, j, k) = to_double(M.t3(i, j, k));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) t4(i, j, k, l) = to_double(M.t4(i, j, k, l));

    // x~ = L x with symmetric L, so indices contract with columns of L
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0;
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q)
                        for (int r = 0; r < n; ++r)
                            sum += L(i, p) * L(j, q) * L(k, r) * t3(p, q, r);
                F.t3w(i, j, k) = sum;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double sum = 0;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q)
                            for (int r = 0; r < n; ++r)
                                for (int s = 0; s < n; ++s)
                                    sum += L(i, p) * L(j, q) * L(k, r) * L(l, s) * t4(p, q, r, s);
                    F.t4w(i, j, k, l) = sum;
                }
    return F;
}

double bound_at(const QuarticForms& F, double lambda, const Eigen::VectorXd& a) {
    if (a.size() != F.n || a.squaredNorm() == 0) throw InputError("bound_at: need a nonzero direction");
    const RatioEval ev = evaluate_ratio(F, a);
    if (ev.degenerate)
        throw ValidationError(
            "bound_at: quadratic lies in the span of the first eigenspace and constants "
            "(degenerate direction)");
    return lambda * (8.0 + 2.0 * ev.ratio) / 3.0;
}

double bound_at_gradient_form(const QuarticForms& F, double lambda, const Eigen::VectorXd& a) {
    if (a.size() != F.n || a.squaredNorm() == 0)
        throw InputError("bound_at_gradient_form: need a nonzero direction");
    const RatioEval ev = evaluate_ratio(F, a);
    if (ev.degenerate)
        throw ValidationError(
            "bound_at_gradient_form: quadratic lies in the span of the first eigenspace and "
            "constants (degenerate direction)");
    return lambda * ((8.0 / 3.0) * ev.phi4 - 2.0 * ev.sum_c_sq) / ev.denominator;
}

BoundResult minimize_over_forms(const QuarticForms& F, double lambda) {
    BoundResult best;
    best.lambda = Rational(lambda);
    bool have_best = false;
    double best_ratio = 0;
    Eigen::VectorXd best_a;
    RatioEval best_ev{};
    int best_iters = 0;

    OptimizerTrace trace;
    const auto starts = deterministic_starts(F.n);
    trace.starts = static_cast<int>(starts.size());

    for (const auto& start : starts) {
        Eigen::VectorXd a = start;
        RatioEval ev = evaluate_ratio(F, a);
        ++trace.evaluations;
        if (ev.degenerate) {
            ++trace.skipped_degenerate;
            continue;
        }
        double step = 1.0;
        int iters = 0;
        bool converged = false;
        for (; iters < 500 && !converged; ++iters) {
            const Eigen::VectorXd g = ratio_gradient(F, a, ev);
            Eigen::VectorXd g_tan = g - g.dot(a) * a;
            const double gnorm2 = g_tan.squaredNorm();
            if (gnorm2 <= 1e-24 * std::max(1.0, ev.ratio * ev.ratio)) break;
            bool accepted = false;
            double t = step;
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd cand = (a - t * g_tan).normalized();
                const RatioEval cev = evaluate_ratio(F, cand);
                ++trace.evaluations;
                if (!cev.degenerate && cev.ratio <= ev.ratio - 1e-4 * t * gnorm2) {
                    const double improvement = ev.ratio - cev.ratio;
                    a = cand;
                    ev = cev;
                    step = std::min(t * 2.0, 1.0);
                    accepted = true;
                    converged = improvement <= kValueTol * std::max(1.0, std::abs(ev.ratio));
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) break;
        }
        canonicalize_sign(a);
        if (!have_best || ev.ratio < best_ratio - 1e-9 ||
            (std::abs(ev.ratio - best_ratio) <= 1e-9 && lex_less(a, best_a))) {
            have_best = true;
            best_ratio = ev.ratio;
            best_a = a;
            best_ev = ev;
            best_iters = iters;
        }
    }

    if (!have_best)
        throw ValidationError(
            "minimize_over_forms: every direction is degenerate (||Phi||^2 vanishes "
            "identically); cannot happen for a full-dimensional region");

    trace.iterations_best = best_iters;
    best.bound = lambda * (8.0 + 2.0 * best_ratio) / 3.0;
    best.argmin = best_a;
    best.numerator = best_ev.numerator;
    best.denominator = best_ev.denominator;
    best.trace = trace;
    if (trace.skipped_degenerate > 0)
        best.notes.push_back(std::to_string(trace.skipped_degenerate) +
                             " degenerate start directions skipped");
    return best;
}

Rational bound_rational_at(const MomentTensor& M, const Rational& lambda, const RatVector& b) {
    const int n = M.dim;
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
        if (b[i] != 0) nonzero = true;
    if (!nonzero) throw InputError("bound_rational_at: need a nonzero direction");

    RatVector u = RatVector::Zero(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) u[j] += M.t3(j, k, l) * b[k] * b[l];
    const RatMatrix Ginv = inverse(M.gram);
    Rational sum_c_sq = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum_c_sq += u[i] * Ginv(i, j) * u[j];

    Rational phi4 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) phi4 += M.t4(i, j, k, l) * b[i] * b[j] * b[k] * b[l];

    Rational s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += b[i] * M.gram(i, j) * b[j];

    const Rational denom = phi4 - sum_c_sq - s * s / M.vol;
    if (denom <= 0)
        throw ValidationError("bound_rational_at: degenerate direction (||Phi||^2 <= 0)");
    const Rational numer = sum_c_sq + 4 * s * s / M.vol;
    return lambda * (Rational(8) + 2 * numer / denom) / 3;
}

namespace {

// Attempt an exact rational certificate at a direction snapped from the
// optimizer's argmin (expressed in original coordinates). Any rational
// direction whose exact value matches the float minimum is a valid witness.
void attach_exact_bound(BoundResult& result, const MomentTensor& M, const WhitenedBasis& W,
                        const Rational& lambda) {
    const int n = M.dim;
    const double float_min_unit = result.bound / to_double(lambda);  // at lambda = 1

    std::vector<RatVector> candidates;
    Eigen::VectorXd braw = W.transform.transpose() * result.argmin;
    const double scale = braw.cwiseAbs().maxCoeff();
    if (scale > 0) {
        braw /= scale;
        for (long max_den : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 24L, 32L, 48L, 64L}) {
            RatVector b(n);
            for (int i = 0; i < n; ++i) b[i] = rationalize(braw[i], max_den);
            candidates.push_back(std::move(b));
        }
    }
    for (int i = 0; i < n; ++i) {
        RatVector b = RatVector::Zero(n);
        b[i] = 1;
        candidates.push_back(std::move(b));
    }
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        RatVector b(n);
        b[0] = 1;
        for (int i = 1; i < n; ++i) b[i] = (mask >> (i - 1)) & 1 ? -1 : 1;
        candidates.push_back(std::move(b));
    }

    const double tol = 1e-9 * std::max(1.0, std::abs(float_min_unit));
    bool found = false;
    Rational best_exact = 0;
    for (const auto& b : candidates) {
        bool nz = false;
        for (int i = 0; i < n; ++i)
            if (b[i] != 0) nz = true;
        if (!nz) continue;
        Rational exact;
        try {
            exact = bound_rational_at(M, Rational(1), b);
        } catch (const ValidationError&) {
            continue;
        }
        if (to_double(exact) <= float_min_unit + tol) {
            if (!found || exact < best_exact) {
                best_exact = exact;
                found = true;
            }
        }
    }
    if (found) result.bound_exact = best_exact * lambda;
}

BoundResult run_pipeline(const MomentTensor& M, const Rational& lambda, double m1_tolerance) {
    const WhitenedBasis W = whiten(M, m1_tolerance);
    const QuarticForms F = quartic_forms(M, W);
    BoundResult result = minimize_over_forms(F, 1.0);
    result.bound *= to_double(lambda);
    result.lambda = lambda;
    attach_exact_bound(result, M, W, lambda);
    return result;
}

}  // namespace

BoundResult minimize_bound(const MomentTensor& M, const Rational& lambda) {
    return run_pipeline(M, lambda, 0.0);
}

BoundResult bound_from_raw_moments(const MomentTensor& M, const Rational& lambda) {
    return run_pipeline(M, lambda, 1e-12);
}

}  // namespace eigenbound
