#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "emit.hpp"
#include "resonance/errors.hpp"

namespace {

using resonance::cli::Artifact;
using resonance::cli::RunConfig;

constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;

nlohmann::json document(const RunConfig& c, const Artifact& a) {
  nlohmann::json config = resonance::cli::config_json(c);
  if (!a.recipe.is_null()) config["recipe"] = a.recipe;
  // "paper_refs" names the schema slot; it carries the formulas evaluated.
  return {{"command", c.command}, {"config", config}, {"results", a.results}, {"paper_refs", a.formulas}};
}

void open_or_throw(std::ofstream& f, const std::string& path) {
  f.open(path, std::ios::binary);
  if (!f) throw resonance::DomainError("cannot write " + path);
}

void emit(const RunConfig& c, const Artifact& a) {
  std::string prefix = c.out;
  if (prefix.empty() && c.format == "all") {
    if (c.command != "repro") throw resonance::DomainError("--format all needs --out");
    prefix = c.figure == 0 ? "constants" : "figure" + std::to_string(c.figure);
  }
  const bool all = c.format == "all";
  if (c.format == "csv" && !a.table) throw resonance::DomainError(c.command + " produces no CSV output");
  if (c.format == "svg" && !a.plot) throw resonance::DomainError(c.command + " produces no SVG output");

  if (prefix.empty()) {
    if (c.format == "json") std::cout << document(c, a).dump(2) << '\n';
    if (c.format == "csv") resonance::cli::write_csv(std::cout, *a.table);
    if (c.format == "svg") resonance::cli::write_svg(std::cout, *a.plot);
    return;
  }
  if (all || c.format == "json") {
    std::ofstream f;
    open_or_throw(f, prefix + ".json");
    f << document(c, a).dump(2) << '\n';
  }
  if ((all || c.format == "csv") && a.table) {
    std::ofstream f;
    open_or_throw(f, prefix + ".csv");
    resonance::cli::write_csv(f, *a.table);
  }
  if ((all || c.format == "svg") && a.plot) {
    std::ofstream f;
    open_or_throw(f, prefix + ".svg");
    resonance::cli::write_svg(f, *a.plot);
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Resonant radial problems: eigenpairs, oscillatory integrals, solution curves"};
  app.set_config("--config", "", "Flat key=value file mirroring the long flags");
  std::string commands;
  for (const auto& n : resonance::cli::command_names()) commands += (commands.empty() ? "" : "|") + n;
  app.add_option("command", c.command, commands)->required();
  app.add_option("--dim", c.dim, "Dimension n of the ball (1..10)");
  app.add_option("--g", c.g, "Nonlinearity: catalog name or inline a1:..,b3:.. list");
  app.add_option("--e", c.e, "Forcing: zero or sin3x");
  app.add_option("--mode", c.mode, "curve: radial or oned");
  app.add_option("--xi-min", c.xi_min, "Lower end of the xi window");
  app.add_option("--xi-max", c.xi_max, "Upper end of the xi window");
  app.add_option("--samples", c.samples, "Number of xi samples");
  app.add_option("--xi1-min", c.xi1_min, "First xi1 of a curve trace");
  app.add_option("--xi1-max", c.xi1_max, "Last xi1 of a curve trace");
  app.add_option("--step", c.step, "Continuation step in xi1");
  app.add_option("--mesh", c.mesh, "Finite-difference mesh size");
  app.add_option("--tol", c.tol, "Newton tolerance (relative residual)");
  app.add_option("--parts", c.parts, "ibp: number of integrations by parts (0 = all admissible)");
  app.add_option("--eps", c.eps, "oned: H-test threshold");
  app.add_option("--u-max", c.u_max, "oned: H-test range [0, u_max]");
  app.add_option("--out", c.out, "Output path prefix; stdout when omitted");
  app.add_option("--format", c.format, "csv|json|svg|all");
  app.add_option("--figure", c.figure, "repro: 1, 2 or 3 (omit for the constants)");
  app.add_flag("--endpoints", c.endpoints, "ibp: report endpoint constants only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }
  if (c.command == "repro" && app.count("--format") == 0) c.format = "all";

  try {
    emit(c, resonance::cli::run_command(c));
  } catch (const resonance::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const resonance::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const resonance::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (last residual " << e.last_residual() << ")\n";
    return kExitConvergence;
  } catch (const resonance::AccuracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const resonance::SearchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  }
  return 0;
}
