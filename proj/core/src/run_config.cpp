#include "fftmech/run_config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>

#include "fftmech/errors.hpp"
#include "fftmech/hyperelastic.hpp"
#include "fftmech/simo.hpp"
#include "fftmech/snapshot.hpp"
#include "fftmech/tensor_ops.hpp"

namespace fftmech {

namespace {

using nlohmann::json;

/// Accumulates path-qualified violations so a config is reported whole.
class Checker {
 public:
  void fail(const std::string& path, const std::string& message) {
    violations_.push_back(path + ": " + message);
  }

  bool has(const json& j, const std::string& key) const { return j.contains(key); }

  template <typename T>
  std::optional<T> get(const json& j, const std::string& path, const std::string& key,
                       bool required, const char* type_name) {
    if (!j.contains(key)) {
      if (required) fail(path + "." + key, "missing required key");
      return std::nullopt;
    }
    try {
      return j.at(key).get<T>();
    } catch (const json::exception&) {
      fail(path + "." + key, std::string("expected ") + type_name);
      return std::nullopt;
    }
  }

  void finish() const {
    if (!violations_.empty()) throw ConfigInvalid(violations_);
  }

 private:
  std::vector<std::string> violations_;
};

void parse_grid(Checker& ck, const json& root, RunConfig& cfg, bool points_required) {
  if (!root.contains("grid")) {
    if (points_required) ck.fail("grid", "missing required section");
    return;
  }
  const json& g = root.at("grid");
  auto points = ck.get<std::vector<int>>(g, "grid", "points", points_required, "array of int");
  auto lengths =
      ck.get<std::vector<double>>(g, "grid", "lengths", false, "array of number");
  if (points) {
    if (points->size() != 2 && points->size() != 3) {
      ck.fail("grid.points", "need 2 or 3 entries");
    } else {
      cfg.grid.dim = static_cast<int>(points->size());
      for (std::size_t a = 0; a < points->size(); ++a) {
        cfg.grid.points[a] = (*points)[a];
        if ((*points)[a] < 1) ck.fail("grid.points", "entries must be >= 1");
      }
    }
  }
  if (lengths) {
    if (points && lengths->size() != points->size()) {
      ck.fail("grid.lengths", "must match grid.points in length");
    } else {
      for (std::size_t a = 0; a < lengths->size() && a < 3; ++a) {
        cfg.grid.lengths[a] = (*lengths)[a];
        if (!((*lengths)[a] > 0.0)) ck.fail("grid.lengths", "entries must be > 0");
      }
    }
  }
}

void parse_microstructure(Checker& ck, const json& root, RunConfig& cfg,
                          const std::filesystem::path& base_dir) {
  if (!root.contains("microstructure")) {
    ck.fail("microstructure", "missing required section");
    return;
  }
  const json& m = root.at("microstructure");
  const auto kind = ck.get<std::string>(m, "microstructure", "kind", true, "string");
  if (!kind) return;
  if (*kind == "cube") {
    cfg.micro_kind = MicrostructureKind::Cube;
    if (auto f = ck.get<double>(m, "microstructure", "volume_fraction", true, "number")) {
      cfg.cube_fraction = *f;
      if (!(*f > 0.0 && *f < 1.0))
        ck.fail("microstructure.volume_fraction", "must lie in (0, 1)");
    }
  } else if (*kind == "laminate") {
    cfg.micro_kind = MicrostructureKind::Laminate;
    if (auto fr = ck.get<std::vector<double>>(m, "microstructure", "fractions", true,
                                              "array of number")) {
      cfg.laminate_fractions = *fr;
      double sum = 0.0;
      for (double x : *fr) {
        sum += x;
        if (!(x > 0.0)) ck.fail("microstructure.fractions", "entries must be > 0");
      }
      if (fr->empty() || std::abs(sum - 1.0) > 1e-9)
        ck.fail("microstructure.fractions", "must sum to 1");
    }
  } else if (*kind == "image") {
    cfg.micro_kind = MicrostructureKind::Image;
    if (auto p = ck.get<std::string>(m, "microstructure", "path", true, "string")) {
      std::filesystem::path ip(*p);
      cfg.image_path = ip.is_absolute() ? ip : base_dir / ip;
    }
    if (auto t = ck.get<double>(m, "microstructure", "threshold", true, "number")) {
      cfg.image_threshold = *t;
      if (!(*t >= 0.0)) ck.fail("microstructure.threshold", "must be >= 0");
    }
    if (auto inv = ck.get<bool>(m, "microstructure", "invert", false, "bool"))
      cfg.image_invert = *inv;
  } else {
    ck.fail("microstructure.kind", "must be one of cube|laminate|image");
  }
}

void parse_model(Checker& ck, const json& root, RunConfig& cfg) {
  if (!root.contains("model")) {
    ck.fail("model", "missing required section");
    return;
  }
  const json& m = root.at("model");
  const auto kind = ck.get<std::string>(m, "model", "kind", true, "string");
  if (kind) {
    if (*kind == "hyperelastic") {
      cfg.model_kind = ModelKind::Hyperelastic;
    } else if (*kind == "simo") {
      cfg.model_kind = ModelKind::Simo;
    } else {
      ck.fail("model.kind", "must be one of hyperelastic|simo");
    }
  }
  const bool simo = cfg.model_kind == ModelKind::Simo;

  if (!m.contains("phases") || !m.at("phases").is_array() || m.at("phases").empty()) {
    ck.fail("model.phases", "need a non-empty array of phase parameter sets");
  } else {
    std::size_t idx = 0;
    for (const json& pj : m.at("phases")) {
      const std::string path = "model.phases[" + std::to_string(idx) + "]";
      PhaseMaterialConfig pc;
      if (auto e = ck.get<double>(pj, path, "youngs", true, "number")) {
        pc.youngs = *e;
        if (!(*e > 0.0)) ck.fail(path + ".youngs", "must be > 0");
      }
      if (auto nu = ck.get<double>(pj, path, "poisson", true, "number")) {
        pc.poisson = *nu;
        if (!(*nu > -1.0 && *nu < 0.5)) ck.fail(path + ".poisson", "must lie in (-1, 0.5)");
      }
      if (simo) {
        if (auto t = ck.get<double>(pj, path, "tau_y0", true, "number")) {
          pc.tau_y0 = *t;
          if (!(*t > 0.0)) ck.fail(path + ".tau_y0", "must be > 0");
        }
        if (auto h = ck.get<double>(pj, path, "hardening", true, "number")) {
          pc.hardening = *h;
          if (!(*h >= 0.0)) ck.fail(path + ".hardening", "must be >= 0");
        }
      }
      cfg.phases.push_back(pc);
      ++idx;
    }
  }

  if (ck.has(m, "contrast")) {
    if (auto chi = ck.get<double>(m, "model", "contrast", false, "number")) {
      cfg.contrast = *chi;
      if (!(*chi > 0.0)) ck.fail("model.contrast", "must be > 0");
      if (!simo) ck.fail("model.contrast", "only meaningful for the simo model");
      if (cfg.phases.size() != 1)
        ck.fail("model.contrast", "requires exactly one (soft) phase entry");
    }
  }
}

void parse_loading(Checker& ck, const json& root, RunConfig& cfg, int tdim_guess) {
  if (!root.contains("loading")) {
    ck.fail("loading", "missing required section");
    return;
  }
  const json& l = root.at("loading");
  const auto mode = ck.get<std::string>(l, "loading", "mode", true, "string");
  if (!mode) return;

  if (*mode == "simple_shear") {
    cfg.loading_mode = LoadingMode::SimpleShear;
    if (auto g = ck.get<double>(l, "loading", "gamma", true, "number")) cfg.shear_gamma = *g;
  } else if (*mode == "pure_shear") {
    cfg.loading_mode = LoadingMode::PureShear;
    if (auto lam = ck.get<double>(l, "loading", "lambda", true, "number")) {
      cfg.stretch_lambda = *lam;
      if (!(*lam > 0.0)) ck.fail("loading.lambda", "must be > 0");
    }
  } else if (*mode == "explicit") {
    cfg.loading_mode = LoadingMode::Explicit;
    if (!l.contains("fbar") || !l.at("fbar").is_array() || l.at("fbar").empty()) {
      ck.fail("loading.fbar", "need a non-empty array of matrices");
    } else {
      std::size_t idx = 0;
      for (const json& fj : l.at("fbar")) {
        const std::string path = "loading.fbar[" + std::to_string(idx) + "]";
        bool ok = fj.is_array() && static_cast<int>(fj.size()) == tdim_guess;
        Tensor2 f(tdim_guess);
        if (ok) {
          for (int i = 0; i < tdim_guess && ok; ++i) {
            ok = fj.at(i).is_array() && static_cast<int>(fj.at(i).size()) == tdim_guess;
            if (ok)
              for (int j = 0; j < tdim_guess; ++j) {
                if (!fj.at(i).at(j).is_number()) {
                  ok = false;
                  break;
                }
                f(i, j) = fj.at(i).at(j).get<double>();
              }
          }
        }
        if (!ok) {
          ck.fail(path, "expected a " + std::to_string(tdim_guess) + "x" +
                            std::to_string(tdim_guess) + " matrix");
        } else if (!(f.det() > 0.0)) {
          ck.fail(path, "det(Fbar) must be positive");
        } else {
          cfg.explicit_fbar.push_back(f);
        }
        ++idx;
      }
    }
  } else {
    ck.fail("loading.mode", "must be one of simple_shear|pure_shear|explicit");
  }

  if (cfg.loading_mode == LoadingMode::Explicit) {
    cfg.increments = static_cast<int>(cfg.explicit_fbar.size());
    if (ck.has(l, "increments")) ck.fail("loading.increments", "implied by the fbar list");
  } else if (auto inc = ck.get<int>(l, "loading", "increments", true, "integer")) {
    cfg.increments = *inc;
    if (*inc < 1) ck.fail("loading.increments", "must be >= 1");
  }
}

void parse_solver(Checker& ck, const json& root, RunConfig& cfg) {
  if (!root.contains("solver")) return;  // defaults apply
  const json& s = root.at("solver");
  if (auto v = ck.get<double>(s, "solver", "eta_newton", false, "number")) {
    cfg.solver.eta_newton = *v;
    if (!(*v > 0.0 && *v < 1.0)) ck.fail("solver.eta_newton", "must lie in (0, 1)");
  }
  if (auto v = ck.get<double>(s, "solver", "eta_cg", false, "number")) {
    cfg.solver.eta_cg = *v;
    if (!(*v > 0.0 && *v < 1.0)) ck.fail("solver.eta_cg", "must lie in (0, 1)");
  }
  if (auto v = ck.get<int>(s, "solver", "max_newton", false, "integer")) {
    cfg.solver.max_newton = *v;
    if (*v < 1) ck.fail("solver.max_newton", "must be >= 1");
  }
  if (auto v = ck.get<int>(s, "solver", "max_cg", false, "integer")) {
    cfg.solver.max_cg = *v;
    if (*v < 0) ck.fail("solver.max_cg", "must be >= 0 (0 = number of unknowns)");
  }
  if (auto v = ck.get<std::string>(s, "solver", "nyquist", false, "string")) {
    if (*v == "zero_compatible") {
      cfg.nyquist = NyquistMode::ZeroCompatible;
    } else if (*v == "identity_equilibrium") {
      cfg.nyquist = NyquistMode::IdentityEquilibrium;
    } else {
      ck.fail("solver.nyquist", "must be zero_compatible|identity_equilibrium");
    }
  }
}

void parse_output(Checker& ck, const json& root, RunConfig& cfg,
                  const std::filesystem::path& base_dir) {
  if (!root.contains("output")) return;  // defaults apply
  const json& o = root.at("output");
  if (auto dir = ck.get<std::string>(o, "output", "directory", false, "string")) {
    std::filesystem::path p(*dir);
    cfg.output_dir = p.is_absolute() ? p : base_dir / p;
  }
  if (auto st = ck.get<int>(o, "output", "stride", false, "integer")) {
    cfg.snapshot_stride = *st;
    if (*st < 1) ck.fail("output.stride", "must be >= 1");
  }
  if (auto fields =
          ck.get<std::vector<std::string>>(o, "output", "fields", false, "array of string")) {
    cfg.output_fields = *fields;
    const std::set<std::string> known = {"F", "P", "eq", "epsp"};
    for (const auto& f : *fields) {
      if (!known.count(f)) ck.fail("output.fields", "unknown field '" + f + "'");
      if (f == "epsp" && cfg.model_kind != ModelKind::Simo)
        ck.fail("output.fields", "'epsp' requires the simo model");
    }
  }
  if (auto v = ck.get<bool>(o, "output", "vtk", false, "bool")) cfg.write_vtk = *v;
}

}  // namespace

int RunConfig::tensor_dim() const {
  return model_kind == ModelKind::Simo ? 3 : grid.dim;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid({std::string("(document): ") + e.what()});
  }
  if (!root.is_object()) throw ConfigInvalid({"(document): expected a JSON object"});

  RunConfig cfg;
  Checker ck;

  parse_model(ck, root, cfg);
  parse_microstructure(ck, root, cfg, base_dir);
  const bool image = cfg.micro_kind == MicrostructureKind::Image;
  if (image) cfg.grid = grid_2d(1, 1);  // points come from the image at load time
  parse_grid(ck, root, cfg, /*points_required=*/!image);
  parse_loading(ck, root, cfg, cfg.tensor_dim());
  parse_solver(ck, root, cfg);
  parse_output(ck, root, cfg, base_dir);

  // cross-field checks knowable without touching the filesystem
  if (cfg.micro_kind == MicrostructureKind::Cube && !cfg.contrast && cfg.phases.size() != 2 &&
      !cfg.phases.empty())
    ck.fail("model.phases", "cube microstructures have 2 phases");
  if (cfg.micro_kind == MicrostructureKind::Laminate && !cfg.laminate_fractions.empty() &&
      !cfg.phases.empty() && !cfg.contrast &&
      cfg.phases.size() != cfg.laminate_fractions.size())
    ck.fail("model.phases", "need one phase per laminate layer");

  ck.finish();
  return cfg;
}

LoadProgram expand_loading(const RunConfig& config) {
  const int d = config.tensor_dim();
  LoadProgram program;
  const int total = config.increments;
  program.reserve(static_cast<std::size_t>(total));

  switch (config.loading_mode) {
    case LoadingMode::SimpleShear:
      for (int t = 1; t <= total; ++t) {
        Tensor2 f = Tensor2::identity(d);
        f(0, 1) = config.shear_gamma * static_cast<double>(t) / total;
        program.push_back({f, std::to_string(t)});
      }
      break;
    case LoadingMode::PureShear:
      for (int t = 1; t <= total; ++t) {
        const double lam =
            1.0 + (config.stretch_lambda - 1.0) * static_cast<double>(t) / total;
        Tensor2 f = Tensor2::identity(d);
        f(0, 0) = lam;
        f(1, 1) = 1.0 / lam;
        program.push_back({f, std::to_string(t)});
      }
      break;
    case LoadingMode::Explicit:
      for (std::size_t t = 0; t < config.explicit_fbar.size(); ++t)
        program.push_back({config.explicit_fbar[t], std::to_string(t + 1)});
      break;
  }
  return program;
}

PhaseGrid build_microstructure(const RunConfig& config) {
  switch (config.micro_kind) {
    case MicrostructureKind::Cube:
      return make_cubic_inclusion(config.grid, config.cube_fraction);
    case MicrostructureKind::Laminate:
      return make_laminate(config.grid, config.laminate_fractions);
    case MicrostructureKind::Image:
      return load_image_threshold(config.image_path, config.image_threshold,
                                  config.image_invert, config.grid.lengths[0],
                                  config.grid.lengths[1]);
  }
  throw std::logic_error("unreachable");
}

namespace {

std::vector<PlasticParams> effective_phases(const RunConfig& config) {
  std::vector<PlasticParams> out;
  for (const auto& p : config.phases)
    out.push_back({ElasticParams{p.youngs, p.poisson}, p.tau_y0, p.hardening});
  if (config.contrast) {
    // chi scales the plastic properties of the hard phase; the phases
    // stay elastically identical.
    PlasticParams hard = out.at(0);
    hard.tau_y0 *= *config.contrast;
    hard.hardening *= *config.contrast;
    out.push_back(hard);
  }
  return out;
}

}  // namespace

std::unique_ptr<MaterialModel> build_model(const RunConfig& config, const PhaseGrid& pg) {
  const auto phases = effective_phases(config);
  if (static_cast<int>(phases.size()) < pg.phase_count)
    throw ConfigInvalid({"model.phases: microstructure has " + std::to_string(pg.phase_count) +
                         " phases but only " + std::to_string(phases.size()) +
                         " parameter sets are given"});
  std::vector<PlasticParams> used(phases.begin(), phases.begin() + pg.phase_count);
  MaterialFields mf = bind_parameters(pg, used);

  if (config.model_kind == ModelKind::Hyperelastic)
    return std::make_unique<HyperelasticModel>(pg.shape, pg.shape.dim, std::move(mf.lambda),
                                               std::move(mf.mu));
  return std::make_unique<SimoPlasticityModel>(pg.shape, std::move(mf.lambda), std::move(mf.mu),
                                               std::move(mf.tau_y0), std::move(mf.hardening));
}

namespace {

/// Writes snapshots and accumulates report rows while the program runs.
class SnapshotSink final : public ProgramSink {
 public:
  explicit SnapshotSink(const RunConfig& config) : config_(config) {}

  void on_increment(std::size_t index, const Increment& inc, const SolveReport& report,
                    const Tensor2Field& F, const Tensor2Field& P, MaterialModel& model) override {
    rows_.push_back({inc.label, report.newton_iterations(), report.total_cg_iterations(),
                     report.passes.empty() ? 0.0 : report.passes.back().rel_update,
                     report.wall_seconds * 1e3, macroscopic_equivalent_strain(inc.fbar)});

    const int number = static_cast<int>(index) + 1;
    if (number % config_.snapshot_stride != 0) return;

    Snapshot snap;
    snap.increment = number;
    snap.label = inc.label;
    snap.grid = F.shape();
    snap.tensor_dim = F.tdim();
    snap.fbar = inc.fbar;
    for (const auto& name : config_.output_fields) {
      SnapshotFieldData data;
      if (name == "F") {
        data.components = F.tdim() * F.tdim();
        data.values.assign(F.data().begin(), F.data().end());
      } else if (name == "P") {
        data.components = P.tdim() * P.tdim();
        data.values.assign(P.data().begin(), P.data().end());
      } else if (name == "eq") {
        const ScalarField eq = model.equivalent_stress_field(F, P);
        data.components = 1;
        data.values.assign(eq.data().begin(), eq.data().end());
      } else if (name == "epsp") {
        const ScalarField* ep = model.committed_eps_p();
        if (!ep) continue;
        data.components = 1;
        data.values.assign(ep->data().begin(), ep->data().end());
      }
      snap.fields[name] = std::move(data);
    }
    write_snapshot(config_.output_dir, snap);
    if (config_.write_vtk)
      write_vtk_snapshot(config_.output_dir / ("snapshot_" + std::to_string(number) + ".vtk"),
                         snap);
  }

  void finish() const { write_report_csv(config_.output_dir / "report.csv", rows_); }

  void record_failure(const std::string& label, const std::string& what) const {
    finish();  // keep the partial report
    std::ofstream out(config_.output_dir / "failure.json");
    nlohmann::json j;
    j["increment"] = label;
    j["error"] = what;
    out << j.dump(2) << '\n';
  }

 private:
  const RunConfig& config_;
  std::vector<ReportRow> rows_;
};

}  // namespace

void execute_run(const RunConfig& config) {
  const PhaseGrid pg = build_microstructure(config);
  auto model = build_model(config, pg);
  const int tdim = model->tensor_dim();

  const ProjectionOperator G = build_projection(pg.shape, tdim, config.nyquist);
  Tensor2Field F = identity2(pg.shape, tdim);
  const LoadProgram program = expand_loading(config);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);

  SnapshotSink sink(config);
  std::size_t done = 0;
  try {
    for (std::size_t idx = 0; idx < program.size(); ++idx) {
      Tensor2Field P;
      const SolveReport report =
          solve_increment(F, *model, G, program[idx], config.solver, &P);
      sink.on_increment(idx, program[idx], report, F, P, *model);
      ++done;
    }
  } catch (const Error& e) {
    sink.record_failure(done < program.size() ? program[done].label : "?", e.what());
    throw;
  }
  sink.finish();
}

}  // namespace fftmech
