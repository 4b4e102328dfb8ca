// Times the serial reference kernels against the OpenMP variants on
// representative workloads and checks that the results match bit for bit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orient/kernels.hpp"
#include "orient/mixture.hpp"
#include "orient/report.hpp"
#include "orient/rng.hpp"

using namespace orient;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, seconds(t0));
  }
  return best;
}

void row(const char* name, double serial_s, double par_s, bool identical) {
  std::printf("%-28s %10.1f %10.1f %8.2fx   %s\n", name, serial_s * 1e3, par_s * 1e3,
              serial_s / par_s, identical ? "bit-identical" : "MISMATCH");
}

MixtureModel demo_model() {
  std::vector<MixtureComponent> comps;
  const double kappas[] = {3.23, 1.88, 4.17, 2.10, 1.37, 4.99, 3.39};
  for (int i = 0; i < 7; ++i) {
    comps.push_back({UsageType::from_code(static_cast<unsigned>(i)),
                     {normalize({0.2 + 0.1 * i, 0.9 - 0.1 * i, 0.3}), kappas[i]},
                     1.0 / 7.0,
                     1000});
  }
  return MixtureModel(std::move(comps));
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 2000000;
  if (argc > 1) {
    n = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
  }
  const int reps = 3;
#ifdef _OPENMP
  std::printf("threads: %d, n = %zu, times in ms (best of %d)\n", omp_get_max_threads(), n, reps);
#else
  std::printf("OpenMP disabled at build time; n = %zu, times in ms (best of %d)\n", n, reps);
#endif
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial", "openmp", "speedup");

  const RandomStream rng(1234);
  const VmfParams params{normalize({0.27, 0.93, 0.24}), 3.23};
  const MixtureModel model = demo_model();
  const kernels::MixtureView view{model.params(), model.weights()};

  std::vector<UnitVec3> draws_serial, draws_par;
  const double t_draw_s = best_of(reps, [&] { draws_serial = kernels::serial::draw_vmf(params, n, rng); });
  const double t_draw_p = best_of(reps, [&] { draws_par = kernels::par::draw_vmf(params, n, rng); });
  row("draw_vmf", t_draw_s, t_draw_p, draws_serial == draws_par);

  kernels::LabeledDraws mix_serial, mix_par;
  const double t_mix_s = best_of(reps, [&] { mix_serial = kernels::serial::draw_mixture(view, n, rng); });
  const double t_mix_p = best_of(reps, [&] { mix_par = kernels::par::draw_mixture(view, n, rng); });
  row("draw_mixture", t_mix_s, t_mix_p,
      mix_serial.vectors == mix_par.vectors && mix_serial.component == mix_par.component);

  std::vector<double> proj_serial, proj_par;
  const double t_proj_s =
      best_of(reps, [&] { proj_serial = kernels::serial::projections(draws_serial, params.mu); });
  const double t_proj_p =
      best_of(reps, [&] { proj_par = kernels::par::projections(draws_serial, params.mu); });
  row("projections", t_proj_s, t_proj_p, proj_serial == proj_par);

  double sum_serial = 0.0, sum_par = 0.0;
  const double t_sum_s = best_of(reps, [&] { sum_serial = kernels::serial::block_sum(proj_serial); });
  const double t_sum_p = best_of(reps, [&] { sum_par = kernels::par::block_sum(proj_serial); });
  row("block_sum", t_sum_s, t_sum_p, sum_serial == sum_par);

  Vec3 res_serial, res_par;
  const double t_res_s = best_of(reps, [&] { res_serial = kernels::serial::resultant(draws_serial); });
  const double t_res_p = best_of(reps, [&] { res_par = kernels::par::resultant(draws_serial); });
  row("resultant", t_res_s, t_res_p, res_serial == res_par);

  // 720x360 grid positions, 7-component mixture
  std::vector<UnitVec3> dirs;
  dirs.reserve(720 * 360);
  for (int i = 0; i < 720; ++i) {
    for (int j = 0; j < 360; ++j) {
      dirs.push_back(from_spherical({(i + 0.5) * 0.5, (j + 0.5) * 0.5}));
    }
  }
  std::vector<double> dens_serial, dens_par;
  const double t_den_s = best_of(reps, [&] { dens_serial = kernels::serial::density(dirs, view); });
  const double t_den_p = best_of(reps, [&] { dens_par = kernels::par::density(dirs, view); });
  row("density 720x360 x7", t_den_s, t_den_p, dens_serial == dens_par);

  const bool all_match = draws_serial == draws_par && proj_serial == proj_par &&
                         sum_serial == sum_par && res_serial == res_par &&
                         dens_serial == dens_par;
  return all_match ? 0 : 1;
}
