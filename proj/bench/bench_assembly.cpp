// Serial reference vs OpenMP quadrature kernel on the heaviest workload:
// stiffness-matrix assembly for the hexagon with the approximate Einstein
// potential.

#include <benchmark/benchmark.h>

#include "eigenbound/presets.hpp"
#include "eigenbound/rayleigh_ritz.hpp"

using namespace eigenbound;

namespace {

std::vector<MultiPoly> degree2_basis() {
    std::vector<MultiPoly> basis;
    for (const auto& alpha : multiindices_up_to(2, 2))
        basis.push_back(MultiPoly::monomial(alpha, Rational(1)));
    return basis;
}

void assemble_with_threads(benchmark::State& state, int threads) {
    const Polytope hexagon = polytope_preset("dp6");
    const SymplecticPotential potential = potential_preset("doran-dp6");
    const auto basis = degree2_basis();
    QuadratureOptions opt;
    opt.tol = 1e-6;
    opt.threads = threads;
    for (auto _ : state) {
        const AssembledMatrices M = assemble_matrices(hexagon, potential, basis, opt);
        benchmark::DoNotOptimize(M.A.data());
    }
}

void BM_assemble_serial(benchmark::State& state) { assemble_with_threads(state, 1); }
void BM_assemble_omp2(benchmark::State& state) { assemble_with_threads(state, 2); }
void BM_assemble_omp4(benchmark::State& state) { assemble_with_threads(state, 4); }

void BM_quadrature_serial_vs_parallel(benchmark::State& state) {
    const Polytope hexagon = polytope_preset("dp6");
    const auto tri = triangulate(hexagon);
    const MatrixIntegrand f = [&](const Eigen::VectorXd& x, Eigen::MatrixXd& out) {
        double g = 1;
        for (const auto& fc : hexagon.facets()) g *= fc.value_d(x);
        out(0, 0) = std::sqrt(g);
    };
    QuadratureOptions opt;
    opt.tol = 1e-8;
    opt.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        QuadratureReport rep;
        const Eigen::MatrixXd r = integrate_adaptive(tri, 1, f, opt, rep);
        benchmark::DoNotOptimize(r(0, 0));
    }
}

}  // namespace

BENCHMARK(BM_assemble_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_omp2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_omp4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quadrature_serial_vs_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
