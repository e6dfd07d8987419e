#include <cmath>
#include <memory>

#include "common.hpp"
#include "overdamp/diffusion_loop.hpp"

namespace overdamp::cli {

namespace {

struct LoopArgs {
  int n_sites = 16;
  double hop = 1.0;
  double e0 = 0.0;
  double hbar = 1.0;
  double q_strength = std::nan("");
  double kappa = std::nan("");
  double beta = std::nan("");
  int sector = 1;
  Range range;
};

loop::DephasingBath bath_of(const LoopArgs& a) {
  if (!std::isnan(a.q_strength)) return loop::DephasingBath(a.q_strength);
  if (std::isnan(a.kappa) || std::isnan(a.beta)) {
    throw UsageError("--q-strength: give it directly or through --kappa and --beta");
  }
  return loop::dephasing_from_drude(
      bath::BathSpec(a.kappa, 1.0, bath::CouplingUnit::Action, a.hbar), bath::ThermalState(a.beta));
}

bool is_diffusive(const std::optional<double>& diffusive, std::complex<double> value) {
  if (!diffusive) return false;
  const double scale = std::max(1.0, std::abs(*diffusive));
  return std::abs(value - *diffusive) <= 1e-8 * scale;
}

} // namespace

void register_loop(CLI::App& root, Session& session) {
  auto args = std::make_shared<LoopArgs>();
  CLI::App* group = root.add_subcommand("loop", "Tight-binding ring with local dephasing");
  group->require_subcommand(1);
  group->add_option("--n-sites", args->n_sites, "Number of ring sites N");
  group->add_option("--hop", args->hop, "Hopping amplitude A");
  group->add_option("--e0", args->e0, "On-site energy");
  group->add_option("--hbar", args->hbar, "Planck constant");
  auto* q_opt = group->add_option("--q-strength", args->q_strength, "Dephasing strength Q");
  group->add_option("--kappa", args->kappa, "Drude coupling (action units), Q = kappa / beta")
      ->excludes(q_opt);
  group->add_option("--beta", args->beta, "Inverse temperature for the Q mapping")->excludes(q_opt);

  CLI::App* spectrum = group->add_subcommand("spectrum", "Eigenvalues of every Bloch sector");
  spectrum->callback([&session, args, spectrum] {
    const loop::LoopModel model(args->n_sites, args->hop, args->e0, args->hbar);
    const auto sectors = loop::full_spectrum(model, bath_of(*args));
    io::CsvTable table;
    table.header = {"n", "q", "re", "im", "is_diffusive"};
    for (const auto& s : sectors) {
      for (const auto& ev : s.eigenvalues) {
        table.rows.push_back({std::to_string(s.n), cell(s.bloch_q), cell(ev.real()),
                              cell(ev.imag()), is_diffusive(s.diffusive, ev) ? "1" : "0"});
      }
    }
    emit_table(session, *spectrum, std::move(table));
  });

  CLI::App* diffusive = group->add_subcommand("diffusive", "Diffusive eigenvalue of one sector");
  diffusive->add_option("--sector", args->sector, "Bloch sector n, q = 2 pi n / N");
  diffusive->callback([&session, args, diffusive] {
    const loop::LoopModel model(args->n_sites, args->hop, args->e0, args->hbar);
    const auto bath = bath_of(*args);
    const auto s = loop::sector_spectrum(model, bath, args->sector);
    Json rec;
    rec["N"] = args->n_sites;
    rec["A"] = args->hop;
    rec["Q"] = bath.q_strength();
    rec["n"] = args->sector;
    rec["q"] = s.bloch_q;
    rec["diffusive"] = number(s.diffusive);
    rec["closed_form"] = number(loop::diffusive_eigenvalue(model, bath, s.bloch_q));
    rec["q_critical"] = loop::q_critical(model);
    emit_record(session, *diffusive, std::move(rec));
  });

  CLI::App* sweep = group->add_subcommand("sweep", "Sector branches followed across a Q range");
  sweep->add_option("--sector", args->sector, "Bloch sector n");
  add_range(*sweep, args->range, "dephasing strength Q");
  sweep->callback([&session, args, sweep] {
    const loop::LoopModel model(args->n_sites, args->hop, args->e0, args->hbar);
    const auto strengths = make_range(args->range);
    if (strengths.front() < 0.0) {
      throw UsageError("--from: dephasing strength must be >= 0");
    }
    const auto rows = loop::track_branches(model, args->sector, strengths);
    const double q = loop::bloch_number(model, args->sector);
    io::CsvTable table;
    table.header = {"Q", "branch", "re", "im", "is_diffusive"};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto diffusive =
          loop::diffusive_eigenvalue(model, loop::DephasingBath(strengths[k]), q);
      for (std::size_t j = 0; j < rows[k].size(); ++j) {
        table.rows.push_back({cell(strengths[k]), std::to_string(j), cell(rows[k][j].real()),
                              cell(rows[k][j].imag()), is_diffusive(diffusive, rows[k][j]) ? "1" : "0"});
      }
    }
    emit_table(session, *sweep, std::move(table));
  });
}

} // namespace overdamp::cli
