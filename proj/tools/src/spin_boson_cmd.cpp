#include <cmath>
#include <memory>

#include "common.hpp"
#include "overdamp/damped_spin.hpp"
#include "overdamp/parallel.hpp"

namespace overdamp::cli {

namespace {

struct SpinBosonArgs {
  double omega0 = 1.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double hbar = 1.0;
  std::string method = "quantum";
  spin::BlochVector b0{1.0, 0.0, 0.0};
  TimeGrid grid;
  std::string param = "kappa";
  Range range;
};

spin::MarkovRates rates_for(const SpinBosonArgs& a, double kappa, double omega0, double beta) {
  const spin::SpinModel spin(omega0, a.hbar);
  const bath::ThermalState temp(beta);
  if (a.method == "limit") return spin::spin_boson_limit_rates(kappa, spin, temp);
  const bath::BathSpec spec(kappa, a.alpha, bath::CouplingUnit::Action, a.hbar);
  if (a.method == "closed-form") return spin::spin_boson_highT(spin, spec, temp);
  return spin::markov_rates(spin, spin::drude_spectral_density(spec, temp, a.method == "classical"));
}

spin::MarkovRates rates_for(const SpinBosonArgs& a) {
  return rates_for(a, a.kappa, a.omega0, a.beta);
}

Json rate_record(const SpinBosonArgs& a, const spin::MarkovRates& r) {
  const spin::SpinModel spin(a.omega0, a.hbar);
  const bath::ThermalState temp(a.beta);
  Json rec;
  rec["omega0"] = a.omega0;
  rec["kappa"] = a.kappa;
  rec["alpha"] = a.alpha;
  rec["beta"] = number(a.beta);
  rec["method"] = a.method;
  rec["gamma"] = r.gamma;
  rec["omega2"] = r.omega2;
  rec["z_inf"] = number(r.z_inf);
  rec["regime"] = std::string(spin::regime_name(spin::classify(r, spin)));
  rec["kappa_c"] = number(temp.is_zero_temperature() ? std::nan("")
                                                     : spin::spin_boson_kappa_c(spin, temp));
  return rec;
}

} // namespace

void register_spin_boson(CLI::App& root, Session& session) {
  auto args = std::make_shared<SpinBosonArgs>();
  CLI::App* group = root.add_subcommand("spin-boson", "Spin coupled to a Drude oscillator bath");
  group->require_subcommand(1);
  group->add_option("--omega0", args->omega0, "Spin frequency");
  group->add_option("--alpha", args->alpha, "Bath cutoff rate");
  group->add_option("--beta", args->beta, "Inverse temperature")->required();
  group->add_option("--hbar", args->hbar, "Planck constant");
  group->add_option("--method", args->method,
                    "quantum | classical (quadrature with the full or high-temperature bath), "
                    "closed-form, limit")
      ->check(CLI::IsMember({"quantum", "classical", "closed-form", "limit"}));

  CLI::App* rates = group->add_subcommand("rates", "Markovian rates Gamma, Omega^2, z_inf");
  rates->add_option("--kappa", args->kappa, "Coupling strength (action units)")->required();
  rates->callback([&session, args, rates] {
    emit_record(session, *rates, rate_record(*args, rates_for(*args)));
  });

  CLI::App* evolve = group->add_subcommand("evolve", "Redfield Bloch-vector trajectory");
  evolve->add_option("--kappa", args->kappa, "Coupling strength (action units)")->required();
  evolve->add_option("--x0", args->b0.x, "Initial x");
  evolve->add_option("--y0", args->b0.y, "Initial y");
  evolve->add_option("--z0", args->b0.z, "Initial z");
  add_time_grid(*evolve, args->grid);
  evolve->callback([&session, args, evolve] {
    const auto r = rates_for(*args);
    const spin::SpinModel spin(args->omega0, args->hbar);
    const double fallback = r.gamma > 0.0 ? 5.0 / r.gamma : 10.0 / args->omega0;
    const auto times = make_times(args->grid, fallback);
    const auto traj = spin::evolve(r, spin, args->b0, times);
    io::CsvTable table;
    table.header = {"t", "x", "y", "z"};
    for (std::size_t i = 0; i < times.size(); ++i) {
      table.rows.push_back({cell(times[i]), cell(traj[i].x), cell(traj[i].y), cell(traj[i].z)});
    }
    emit_table(session, *evolve, std::move(table));
  });

  CLI::App* sweep = group->add_subcommand("sweep", "Rates and modes along a parameter range");
  sweep->add_option("--kappa", args->kappa, "Coupling strength when not swept");
  sweep->add_option("--param", args->param, "Swept parameter")
      ->check(CLI::IsMember({"kappa", "beta", "omega0"}));
  add_range(*sweep, args->range, "parameter value");
  sweep->callback([&session, args, sweep] {
    const auto values = make_range(args->range);
    const auto rows = parallel_map(
        values.size(),
        [&](std::size_t i) {
          double kappa = args->kappa, omega0 = args->omega0, beta = args->beta;
          if (args->param == "kappa") kappa = values[i];
          if (args->param == "beta") beta = values[i];
          if (args->param == "omega0") omega0 = values[i];
          const auto r = rates_for(*args, kappa, omega0, beta);
          const auto s = spin::modes(r);
          const auto regime = spin::classify(r, spin::SpinModel(omega0, args->hbar));
          return std::vector<std::string>{cell(values[i]),    cell(r.gamma),
                                          cell(r.omega2),     cell(r.z_inf),
                                          cell(s[2].real()),  cell(s[3].real()),
                                          std::string(spin::regime_name(regime))};
        },
        session.threads);
    io::CsvTable table;
    table.header = {args->param, "gamma", "omega2", "z_inf", "re_s3", "re_s4", "regime"};
    table.rows = rows;
    emit_table(session, *sweep, std::move(table));
  });
}

} // namespace overdamp::cli
