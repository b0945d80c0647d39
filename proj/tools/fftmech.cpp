// Batch front end: run a configured job, validate a configuration, or
// inspect a snapshot directory.
//
// Exit codes: 0 success, 2 configuration error, 3 solver divergence,
// 4 I/O failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fftmech/errors.hpp"
#include "fftmech/run_config.hpp"
#include "fftmech/snapshot.hpp"
#include "fftmech/tensor_ops.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw fftmech::IoFailure("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Applies `section.key=value` overrides onto the JSON document, so the
// precedence is flag > file > default.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw fftmech::ConfigInvalid({"--set expects key.path=value, got '" + s + "'"});
    const std::string keypath = s.substr(0, eq);
    const std::string value = s.substr(eq + 1);

    nlohmann::json* node = &doc;
    std::size_t start = 0;
    while (true) {
      const auto dot = keypath.find('.', start);
      const std::string key = keypath.substr(start, dot - start);
      if (key.empty())
        throw fftmech::ConfigInvalid({"--set has an empty key component in '" + keypath + "'"});
      if (dot == std::string::npos) {
        nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
        (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
        break;
      }
      node = &(*node)[key];
      start = dot + 1;
    }
  }
}

fftmech::RunConfig load_config(const std::filesystem::path& path,
                               const std::vector<std::string>& sets) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw fftmech::ConfigInvalid({std::string("(document): ") + e.what()});
  }
  apply_overrides(doc, sets);
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return fftmech::parse_config(doc.dump(), base);
}

int cmd_info(const std::filesystem::path& dir) {
  const auto increments = fftmech::list_snapshots(dir);
  if (increments.empty()) {
    std::cout << dir.string() << ": no snapshots found\n";
    return kExitOk;
  }
  std::cout << dir.string() << ": " << increments.size() << " snapshot(s)\n";
  for (const int inc : increments) {
    const fftmech::Snapshot snap = fftmech::read_snapshot(dir, inc);
    std::cout << "  increment " << inc << " (label " << snap.label << "): grid";
    for (int a = 0; a < snap.grid.dim; ++a)
      std::cout << (a ? "x" : " ") << snap.grid.points[a];
    std::cout << ", tensor dim " << snap.tensor_dim << ", fields";
    for (const auto& [name, data] : snap.fields) std::cout << " " << name;
    if (snap.fields.count("F")) {
      const auto F = fftmech::snapshot_to_field(snap, "F");
      const fftmech::Tensor2 mean = fftmech::field_mean(F);
      double drift = 0.0;
      for (int i = 0; i < mean.dim; ++i)
        for (int j = 0; j < mean.dim; ++j)
          drift = std::max(drift, std::abs(mean(i, j) - snap.fbar(i, j)));
      std::cout << ", |mean(F)-Fbar|_inf = " << drift;
      if (drift > 1e-10) {
        std::cout << "  <-- VIOLATED\n";
        return kExitIo;
      }
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FFT-based Galerkin solver for finite-strain periodic homogenization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string snapshot_dir;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "Run a configured job");
  run->add_option("config", config_path, "JSON run configuration")->required();
  run->add_option("--set", sets, "Override a config key, e.g. --set solver.eta_newton=1e-6")
      ->take_all();

  auto* validate = app.add_subcommand("validate", "Validate a configuration and exit");
  validate->add_option("config", config_path, "JSON run configuration")->required();
  validate->add_option("--set", sets, "Override a config key before validating")->take_all();

  auto* info = app.add_subcommand("info", "Summarize a snapshot directory");
  info->add_option("dir", snapshot_dir, "Snapshot directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const fftmech::RunConfig config = load_config(config_path, sets);
      fftmech::execute_run(config);
      std::cout << "run complete: " << config.output_dir.string() << "\n";
      return kExitOk;
    }
    if (validate->parsed()) {
      load_config(config_path, sets);
      std::cout << "configuration OK\n";
      return kExitOk;
    }
    return cmd_info(snapshot_dir);
  } catch (const fftmech::ConfigInvalid& e) {
    for (const auto& v : e.violations) std::cerr << "config error: " << v << "\n";
    return kExitConfig;
  } catch (const fftmech::NewtonDiverged& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const fftmech::CgStalled& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const fftmech::IoFailure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fftmech::UnreadableImage& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fftmech::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
