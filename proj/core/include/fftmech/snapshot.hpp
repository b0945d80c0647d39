#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fftmech/fields.hpp"
#include "fftmech/tensor2.hpp"

namespace fftmech {

/// One row of the run report CSV.
struct ReportRow {
  std::string increment;
  int newton_iters = 0;
  long cg_iters_total = 0;
  double residual = 0.0;
  double wall_ms = 0.0;
  double eps_bar = 0.0;
};

/// Writes `increment,newton_iters,cg_iters_total,residual,wall_ms,eps_bar`.
void write_report_csv(const std::filesystem::path& file, const std::vector<ReportRow>& rows);

/// Raw little-endian float64 arrays, one file per field, plus a sidecar
/// metadata record sufficient to reconstruct the tensors bit-exactly.
struct SnapshotFieldData {
  int components = 1;                 // 1 for scalars, tdim^2 for tensors
  std::vector<double> values;         // component-major slabs of n values
};

struct Snapshot {
  int increment = 0;
  std::string label;
  GridShape grid;
  int tensor_dim = 3;
  Tensor2 fbar;
  std::map<std::string, SnapshotFieldData> fields;
};

void write_snapshot(const std::filesystem::path& dir, const Snapshot& snap);

/// Reads `meta_<increment>.json` and the field files it names.
Snapshot read_snapshot(const std::filesystem::path& dir, int increment);

/// Increments that have a metadata record in the directory, ascending.
std::vector<int> list_snapshots(const std::filesystem::path& dir);

/// Reassemble a tensor field from snapshot data (components = tdim^2).
Tensor2Field snapshot_to_field(const Snapshot& snap, const std::string& name);

/// Optional convenience output: legacy-VTK structured points with the
/// snapshot's scalar and tensor fields.
void write_vtk_snapshot(const std::filesystem::path& file, const Snapshot& snap);

}  // namespace fftmech
