#include <algorithm>
#include <cmath>
#include <memory>

#include "common.hpp"
#include "overdamp/parallel.hpp"
#include "overdamp/qbm.hpp"

namespace overdamp::cli {

namespace {

struct QbmArgs {
  double omega0 = 1.0;
  double kappa = 0.0;
  double alpha = 100.0;
  double beta = bath::kInfiniteBeta;
  double hbar = 1.0;
  std::string method = "exact";
  std::string form = "full";
  qbm::OscillatorMeanState init{1.0, 0.0};
  int n_osc = 2000;
  double omega_max = std::nan("");
  std::string grid_kind = "uniform";
  TimeGrid grid;
  std::string param = "kappa";
  Range range;
};

qbm::QbmModel model_of(const QbmArgs& a) {
  return qbm::make_model(a.omega0, a.kappa, a.alpha, a.beta, a.hbar);
}

qbm::QbmRates rates_of(const QbmArgs& a, const qbm::QbmModel& model) {
  return a.method == "markov" ? qbm::markov_rates(model) : qbm::exact_rates(model);
}

double default_horizon(const qbm::QbmModel& model, const qbm::QbmRates& r) {
  return r.gamma > 0.0 ? 5.0 / r.gamma : 10.0 / model.omega0();
}

void add_initial_state(CLI::App& app, QbmArgs& a) {
  app.add_option("--q0", a.init.q_mean, "Initial mean position");
  app.add_option("--p0", a.init.p_mean, "Initial mean momentum");
}

} // namespace

void register_qbm(CLI::App& root, Session& session) {
  auto args = std::make_shared<QbmArgs>();
  CLI::App* group = root.add_subcommand("qbm", "Oscillator coupled to a Drude bath");
  group->require_subcommand(1);
  group->add_option("--omega0", args->omega0, "Bare oscillator frequency");
  group->add_option("--kappa", args->kappa, "Coupling strength (frequency units)");
  group->add_option("--alpha", args->alpha, "Bath cutoff rate");
  group->add_option("--beta", args->beta, "Inverse temperature");
  group->add_option("--hbar", args->hbar, "Planck constant");
  group->add_option("--method", args->method, "exact | markov")
      ->check(CLI::IsMember({"exact", "markov"}));

  CLI::App* rates = group->add_subcommand("rates", "Rates Gamma, Omega^2, lambda");
  rates->callback([&session, args, rates] {
    const auto model = model_of(*args);
    const auto r = rates_of(*args, model);
    Json rec;
    rec["omega0"] = args->omega0;
    rec["kappa"] = args->kappa;
    rec["alpha"] = args->alpha;
    rec["beta"] = number(args->beta);
    rec["gamma"] = r.gamma;
    rec["omega2"] = r.omega2;
    rec["lambda"] = r.lambda;
    rec["regime"] = std::string(spin::regime_name(r.regime));
    rec["kappa_c"] = qbm::kappa_critical(model);
    rec["residual"] = r.residual;
    rec["ambiguous"] = r.ambiguous;
    emit_record(session, *rates, std::move(rec));
  });

  CLI::App* amplitude = group->add_subcommand("amplitude", "A(t), dA/dt and the mean position");
  amplitude->add_option("--form", args->form, "full | markov")
      ->check(CLI::IsMember({"full", "markov"}));
  add_initial_state(*amplitude, *args);
  add_time_grid(*amplitude, args->grid);
  amplitude->callback([&session, args, amplitude] {
    const auto model = model_of(*args);
    const auto r = rates_of(*args, model);
    const auto form = args->form == "markov" ? qbm::AmplitudeForm::Markov : qbm::AmplitudeForm::Full;
    const auto times = make_times(args->grid, default_horizon(model, r));
    io::CsvTable table;
    table.header = {"t", "A", "Adot", "q_mean"};
    for (double t : times) {
      const auto v = qbm::amplitude(r, t, form);
      table.rows.push_back({cell(t), cell(v.a), cell(v.adot),
                            cell(v.adot * args->init.q_mean + v.a * args->init.p_mean)});
    }
    emit_table(session, *amplitude, std::move(table));
  });

  CLI::App* oracle = group->add_subcommand("oracle", "Finite oscillator bath integrated directly");
  oracle->add_option("--n-osc", args->n_osc, "Number of bath oscillators");
  oracle->add_option("--omega-max", args->omega_max, "Bath frequency cutoff (default 20 alpha)");
  oracle->add_option("--grid", args->grid_kind, "uniform | geometric")
      ->check(CLI::IsMember({"uniform", "geometric"}));
  add_initial_state(*oracle, *args);
  add_time_grid(*oracle, args->grid);
  oracle->callback([&session, args, oracle] {
    const auto model = model_of(*args);
    const auto r = qbm::exact_rates(model);
    const auto times = make_times(args->grid, default_horizon(model, r));
    const double omega_max = std::isnan(args->omega_max) ? 20.0 * args->alpha : args->omega_max;
    const auto grid =
        args->grid_kind == "geometric" ? qbm::BathGrid::Geometric : qbm::BathGrid::Uniform;
    const auto res = qbm::finite_bath_oracle(model, args->n_osc, omega_max, args->init, times, grid);
    if (session.format == "json") {
      double sup = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double exact = qbm::mean_displacement(r, args->init, times[i]);
        sup = std::max(sup, std::abs(exact - res.q_mean[i]));
        scale = std::max(scale, std::abs(exact));
      }
      Json rec;
      rec["n_osc"] = args->n_osc;
      rec["omega_max"] = omega_max;
      rec["grid"] = args->grid_kind;
      rec["relative_sup_deviation"] = scale > 0.0 ? sup / scale : sup;
      rec["energy_drift"] = res.energy_drift;
      rec["recurrence_time"] = res.recurrence_time;
      rec["steps"] = res.steps;
      emit_record(session, *oracle, std::move(rec));
      return;
    }
    io::CsvTable table;
    table.header = {"t", "q_mean", "p_mean", "q_exact"};
    for (std::size_t i = 0; i < times.size(); ++i) {
      table.rows.push_back({cell(times[i]), cell(res.q_mean[i]), cell(res.p_mean[i]),
                            cell(qbm::mean_displacement(r, args->init, times[i]))});
    }
    emit_table(session, *oracle, std::move(table));
  });

  CLI::App* sweep = group->add_subcommand("sweep", "Rates along a parameter range");
  sweep->add_option("--param", args->param, "Swept parameter")
      ->check(CLI::IsMember({"kappa", "alpha", "omega0"}));
  add_range(*sweep, args->range, "parameter value");
  sweep->callback([&session, args, sweep] {
    const auto values = make_range(args->range);
    const auto rows = parallel_map(
        values.size(),
        [&](std::size_t i) {
          QbmArgs a = *args;
          if (a.param == "kappa") a.kappa = values[i];
          if (a.param == "alpha") a.alpha = values[i];
          if (a.param == "omega0") a.omega0 = values[i];
          const auto r = rates_of(a, model_of(a));
          return std::vector<std::string>{cell(values[i]), cell(r.gamma), cell(r.omega2),
                                          cell(r.lambda), std::string(spin::regime_name(r.regime))};
        },
        session.threads);
    io::CsvTable table;
    table.header = {args->param, "gamma", "omega2", "lambda", "regime"};
    table.rows = rows;
    emit_table(session, *sweep, std::move(table));
  });
}

} // namespace overdamp::cli
