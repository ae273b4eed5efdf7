#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emit.hpp"
#include "json.hpp"

namespace resonance::cli {

struct RunConfig {
  std::string command;
  int dim = 3;
  std::string g = "sin";
  std::string e = "zero";
  // curve only: "radial" (dimension --dim) or "oned".
  std::string mode = "radial";
  double xi_min = 20.0;
  double xi_max = 100.0;
  int samples = 161;
  double xi1_min = 0.5;
  double xi1_max = 80.0;
  double step = 0.5;
  int mesh = 512;
  double tol = 1e-10;
  // ibp: 0 means every admissible number of parts.
  int parts = 0;
  double eps = 0.1;
  double u_max = 200.0;
  std::string out;
  std::string format = "json";
  int figure = 0;
  bool endpoints = false;
};

struct Artifact {
  nlohmann::json results;
  std::optional<Table> table;
  std::optional<Series> plot;
  std::vector<std::string> formulas;
  // Recipes fix their own windows; the config echo says so.
  nlohmann::json recipe;
};

const std::vector<std::string>& command_names();
// Throws DomainError for an invalid config (window, sampling, names).
void validate(const RunConfig& config);
Artifact run_command(const RunConfig& config);
nlohmann::json config_json(const RunConfig& config);

}  // namespace resonance::cli
