// Parallel kernels against their serial schedules.

#include <benchmark/benchmark.h>

#include "locus/ludics/behaviour.hpp"
#include "locus/mll/structure.hpp"
#include "locus/mll/criteria.hpp"

namespace ml = locus::mll;
namespace lu = locus::ludics;

namespace {

// Tensors of n pars X^ % X, each closed by its own axiom: correct, with 2^n switchings for DR.
void tensor_of_pars(std::size_t n, const std::string& at, std::string& formula, std::string& leaves,
                    std::string& classes) {
  if (n == 1) {
    formula += "(X^ % X)";
    leaves += (leaves.empty() ? "" : ", ") + at + "1, " + at + "2";
    classes += "class {0:" + at + "1, 0:" + at + "2}\n";
    return;
  }
  formula += "(";
  tensor_of_pars(n / 2, at + "1", formula, leaves, classes);
  formula += " * ";
  tensor_of_pars(n - n / 2, at + "2", formula, leaves, classes);
  formula += ")";
}

ml::ParaproofStructure wide_structure(std::size_t pars) {
  std::string formula, leaves, classes;
  tensor_of_pars(pars, "", formula, leaves, classes);
  return ml::parse_structure("tree 0: " + formula + " @ {" + leaves + "}\n" + classes);
}

void BM_Dr(benchmark::State& state) {
  auto s = wide_structure(static_cast<std::size_t>(state.range(0)));
  ml::DrOptions o;
  o.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(ml::check_dr(s, o).accepted);
  state.SetLabel(o.parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Dr)->ArgsProduct({{10, 14}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Cp(benchmark::State& state) {
  auto s = wide_structure(4);
  ml::CpOptions o;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(ml::check_cp(s, o).accepted);
  state.SetLabel(o.parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Cp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Space(benchmark::State& state) {
  lu::Universe u{lu::parse_alphabet("{1},{2},{3} | {1} | {1}"), 3};
  auto sched = state.range(0) ? lu::Schedule::Parallel : lu::Schedule::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(lu::Space::make(u, sched));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Space)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
