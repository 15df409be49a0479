#include <benchmark/benchmark.h>

#include <mbeam/assembly.hpp>
#include <mbeam/integrator.hpp>
#include <mbeam/verification.hpp>

using namespace mbeam;

namespace {

HermiteSpace make_space(int dim, int cells) { return HermiteSpace(Mesh::uniform(Box::symmetric(dim), cells)); }

void BM_AssembleConstant(benchmark::State& state) {
  const auto space = make_space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Assembler as(space);
  for (auto _ : state) benchmark::DoNotOptimize(as.assemble_constant());
  state.counters["dofs"] = space.free_count();
}
BENCHMARK(BM_AssembleConstant)->Args({1, 128})->Args({2, 16})->Args({2, 32});

void BM_AssembleEvolution(benchmark::State& state) {
  const auto space = make_space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Assembler as(space);
  const auto constant = as.assemble_constant();
  const auto boundary = MovingBoundary::b2(space.dim());
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(as.assemble_evolution(constant, boundary, BeamParameters{}, t));
    t += 1.0 / 128.0;
  }
}
BENCHMARK(BM_AssembleEvolution)->Args({1, 128})->Args({2, 16})->Args({2, 32});

void BM_LoadVector(benchmark::State& state) {
  const auto space = make_space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Assembler as(space);
  const auto v = ManufacturedCase::s1(space.mesh().box);
  const auto f = make_source(v, MovingBoundary::b1(space.dim()), BeamParameters{});
  for (auto _ : state) benchmark::DoNotOptimize(as.assemble_load(f, 0.3));
}
BENCHMARK(BM_LoadVector)->Args({1, 128})->Args({2, 16});

void BM_JacobianSolve(benchmark::State& state) {
  const auto space = make_space(2, static_cast<int>(state.range(0)));
  const Assembler as(space);
  const auto constant = as.assemble_constant();
  StructuredJacobian J;
  J.base = constant.mass + 1e-3 * constant.stiffness_bilap;
  const Vector u = Vector::Ones(space.free_count());
  J.rank_one.emplace_back(1e-6 * u, u);
  const Vector rhs = Vector::LinSpaced(space.free_count(), -1.0, 1.0);
  JacobianSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(J, rhs));
  state.counters["dofs"] = space.free_count();
}
BENCHMARK(BM_JacobianSolve)->Arg(16)->Arg(32);

void BM_Advance(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto space = make_space(dim, static_cast<int>(state.range(1)));
  const Assembler as(space);
  const auto v = ManufacturedCase::s1(space.mesh().box);
  const auto init = interpolate_initial(as, v.initial_displacement(), v.initial_velocity());
  BeamProblem problem;
  problem.assembler = &as;
  problem.boundary = MovingBoundary::b1(dim);
  problem.source = make_source(v, problem.boundary, problem.params);
  problem.initial_displacement = init.displacement;
  problem.initial_velocity = init.velocity;
  NewmarkConfig cfg;
  cfg.dt = 1.0 / 64.0;
  cfg.steps = 64;
  AdvanceOptions opts;
  opts.keep_states = false;
  for (auto _ : state) benchmark::DoNotOptimize(advance(problem, cfg, opts));
  state.counters["steps/s"] = benchmark::Counter(cfg.steps, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Advance)->Args({1, 128})->Args({2, 16})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
