#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fftmech/material.hpp"
#include "fftmech/microstructure.hpp"
#include "fftmech/projection.hpp"
#include "fftmech/solver.hpp"

namespace fftmech {

enum class MicrostructureKind { Cube, Laminate, Image };
enum class ModelKind { Hyperelastic, Simo };
enum class LoadingMode { SimpleShear, PureShear, Explicit };

/// Per-phase material input; the plastic entries are ignored by the
/// hyperelastic model.
struct PhaseMaterialConfig {
  double youngs = 1.0;
  double poisson = 0.3;
  double tau_y0 = 0.0;
  double hardening = 0.0;
};

/// A fully validated batch-run description. `parse_config` either returns
/// one of these or throws ConfigInvalid carrying every violation found.
struct RunConfig {
  GridShape grid;  // for image microstructures the points come from the image

  MicrostructureKind micro_kind = MicrostructureKind::Cube;
  double cube_fraction = 0.1;
  std::vector<double> laminate_fractions;
  std::filesystem::path image_path;
  double image_threshold = 127.0;
  bool image_invert = false;

  ModelKind model_kind = ModelKind::Hyperelastic;
  std::vector<PhaseMaterialConfig> phases;
  std::optional<double> contrast;  // simo shortcut: hard phase = soft scaled by chi

  LoadingMode loading_mode = LoadingMode::SimpleShear;
  double shear_gamma = 1.0;    // simple shear target
  double stretch_lambda = 1.2; // pure shear target
  std::vector<Tensor2> explicit_fbar;
  int increments = 1;

  SolverParams solver;
  NyquistMode nyquist = NyquistMode::ZeroCompatible;

  std::filesystem::path output_dir = "out";
  int snapshot_stride = 1;
  std::vector<std::string> output_fields = {"F", "P", "eq"};
  bool write_vtk = false;

  /// Tensor dimension of the run: 3 for the Simo model (plane strain on
  /// 2-d grids), the grid dimension otherwise.
  int tensor_dim() const;
};

/// Parses and validates a JSON run configuration. Relative file paths are
/// resolved against `base_dir`. Collects all violations before throwing.
RunConfig parse_config(const std::string& text,
                       const std::filesystem::path& base_dir = ".");

/// The macroscopic deformation-gradient schedule of the configured
/// loading mode: uniform ramps for the shear modes, the given list for
/// explicit loading.
LoadProgram expand_loading(const RunConfig& config);

PhaseGrid build_microstructure(const RunConfig& config);

/// Per-node parameter binding plus model construction; checks the phase
/// count of the (possibly image-derived) microstructure against the
/// configured phase list.
std::unique_ptr<MaterialModel> build_model(const RunConfig& config, const PhaseGrid& pg);

/// Runs the configured job end to end: microstructure, model, projection,
/// load program, snapshots and the report CSV. On a solver failure the
/// partial outputs and a failure record are kept and the error rethrown.
void execute_run(const RunConfig& config);

}  // namespace fftmech
