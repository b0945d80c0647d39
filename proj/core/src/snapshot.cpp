#include "fftmech/snapshot.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <fstream>
#include <regex>

#include "fftmech/errors.hpp"

namespace fftmech {

namespace {

using nlohmann::json;

void write_le_doubles(std::ostream& out, std::span<const double> values) {
  for (const double v : values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    out.write(bytes, 8);
  }
}

std::vector<double> read_le_doubles(std::istream& in, std::size_t count) {
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

json grid_to_json(const GridShape& g) {
  json j;
  j["dim"] = g.dim;
  j["points"] = std::vector<int>(g.points.begin(), g.points.begin() + g.dim);
  j["lengths"] = std::vector<double>(g.lengths.begin(), g.lengths.begin() + g.dim);
  return j;
}

json tensor_to_json(const Tensor2& t) {
  json rows = json::array();
  for (int i = 0; i < t.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < t.dim; ++j) row.push_back(t(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void write_report_csv(const std::filesystem::path& file, const std::vector<ReportRow>& rows) {
  std::ofstream out(file);
  if (!out) throw IoFailure("cannot open " + file.string() + " for writing");
  out << "increment,newton_iters,cg_iters_total,residual,wall_ms,eps_bar\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << r.increment << ',' << r.newton_iters << ',' << r.cg_iters_total << ',' << r.residual
        << ',' << r.wall_ms << ',' << r.eps_bar << '\n';
  }
  if (!out) throw IoFailure("write failed: " + file.string());
}

void write_snapshot(const std::filesystem::path& dir, const Snapshot& snap) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  json meta;
  meta["schema"] = "fftmech-snapshot-1";
  meta["increment"] = snap.increment;
  meta["label"] = snap.label;
  meta["fbar"] = tensor_to_json(snap.fbar);
  meta["grid"] = grid_to_json(snap.grid);
  meta["tensor_dim"] = snap.tensor_dim;
  meta["byte_order"] = "little";
  meta["scalar_type"] = "float64";
  meta["layout"] = "component-major";
  meta["component_order"] = "row-major (i,j) -> i*tensor_dim+j";

  json fields = json::object();
  for (const auto& [name, data] : snap.fields) {
    const std::string file = name + "_" + std::to_string(snap.increment) + ".bin";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + (dir / file).string() + " for writing");
    write_le_doubles(out, data.values);
    if (!out) throw IoFailure("write failed: " + (dir / file).string());
    fields[name] = {{"file", file}, {"components", data.components}};
  }
  meta["fields"] = fields;

  const auto meta_path = dir / ("meta_" + std::to_string(snap.increment) + ".json");
  std::ofstream out(meta_path);
  if (!out) throw IoFailure("cannot open " + meta_path.string() + " for writing");
  out << meta.dump(2) << '\n';
  if (!out) throw IoFailure("write failed: " + meta_path.string());
}

Snapshot read_snapshot(const std::filesystem::path& dir, int increment) {
  const auto meta_path = dir / ("meta_" + std::to_string(increment) + ".json");
  std::ifstream in(meta_path);
  if (!in) throw IoFailure("cannot open " + meta_path.string());
  json meta;
  try {
    in >> meta;
  } catch (const json::exception& e) {
    throw IoFailure(meta_path.string() + ": " + e.what());
  }

  Snapshot snap;
  try {
    snap.increment = meta.at("increment").get<int>();
    snap.label = meta.at("label").get<std::string>();
    snap.tensor_dim = meta.at("tensor_dim").get<int>();

    const auto& g = meta.at("grid");
    snap.grid.dim = g.at("dim").get<int>();
    const auto pts = g.at("points").get<std::vector<int>>();
    const auto len = g.at("lengths").get<std::vector<double>>();
    for (int a = 0; a < snap.grid.dim; ++a) {
      snap.grid.points[a] = pts.at(a);
      snap.grid.lengths[a] = len.at(a);
    }
    snap.grid.validate();

    snap.fbar = Tensor2(snap.tensor_dim);
    const auto& fb = meta.at("fbar");
    for (int i = 0; i < snap.tensor_dim; ++i)
      for (int j = 0; j < snap.tensor_dim; ++j) snap.fbar(i, j) = fb.at(i).at(j).get<double>();

    const std::size_t n = snap.grid.node_count();
    for (const auto& [name, spec] : meta.at("fields").items()) {
      SnapshotFieldData data;
      data.components = spec.at("components").get<int>();
      const auto file = dir / spec.at("file").get<std::string>();
      std::ifstream fin(file, std::ios::binary);
      if (!fin) throw IoFailure("cannot open " + file.string());
      data.values = read_le_doubles(fin, n * static_cast<std::size_t>(data.components));
      if (!fin) throw IoFailure("truncated field data: " + file.string());
      snap.fields[name] = std::move(data);
    }
  } catch (const json::exception& e) {
    throw IoFailure(meta_path.string() + ": " + e.what());
  }
  return snap;
}

std::vector<int> list_snapshots(const std::filesystem::path& dir) {
  std::vector<int> found;
  const std::regex pattern(R"(meta_(\d+)\.json)");
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) found.push_back(std::stoi(m[1].str()));
  }
  std::sort(found.begin(), found.end());
  return found;
}

Tensor2Field snapshot_to_field(const Snapshot& snap, const std::string& name) {
  const auto it = snap.fields.find(name);
  if (it == snap.fields.end()) throw IoFailure("snapshot has no field '" + name + "'");
  const int d = snap.tensor_dim;
  if (it->second.components != d * d)
    throw IoFailure("field '" + name + "' is not a second-order tensor field");
  Tensor2Field f(snap.grid, d);
  std::copy(it->second.values.begin(), it->second.values.end(), f.data().begin());
  return f;
}

void write_vtk_snapshot(const std::filesystem::path& file, const Snapshot& snap) {
  std::ofstream out(file);
  if (!out) throw IoFailure("cannot open " + file.string() + " for writing");
  out.precision(12);

  const GridShape& g = snap.grid;
  const int nx = g.points[0];
  const int ny = g.dim >= 2 ? g.points[1] : 1;
  const int nz = g.dim >= 3 ? g.points[2] : 1;
  const std::size_t n = g.node_count();

  out << "# vtk DataFile Version 3.0\n";
  out << "fftmech snapshot increment " << snap.increment << "\n";
  out << "ASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << nx << " " << ny << " " << nz << "\n";
  out << "ORIGIN 0 0 0\n";
  out << "SPACING " << g.lengths[0] / nx << " " << (g.dim >= 2 ? g.lengths[1] / ny : 1.0) << " "
      << (g.dim >= 3 ? g.lengths[2] / nz : 1.0) << "\n";
  out << "POINT_DATA " << n << "\n";

  // VTK iterates x fastest; our nodes store the last axis fastest.
  const auto each_node_vtk_order = [&](auto&& emit) {
    for (int iz = 0; iz < nz; ++iz)
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) emit(g.node_index({ix, iy, iz}));
  };

  for (const auto& [name, data] : snap.fields) {
    const int c = data.components;
    const std::size_t stride = n;
    if (c == 1) {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      each_node_vtk_order([&](std::size_t k) { out << data.values[k] << "\n"; });
    } else {
      const int d = snap.tensor_dim;
      out << "TENSORS " << name << " double\n";
      each_node_vtk_order([&](std::size_t k) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            const double v = (i < d && j < d)
                                 ? data.values[static_cast<std::size_t>(i * d + j) * stride + k]
                                 : 0.0;
            out << v << (j < 2 ? " " : "\n");
          }
        }
        out << "\n";
      });
    }
  }
  if (!out) throw IoFailure("write failed: " + file.string());
}

}  // namespace fftmech
