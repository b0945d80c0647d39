#include "fftmech/microstructure.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "fftmech/errors.hpp"

namespace fftmech {

double phase_fraction(const PhaseGrid& pg, int phase) {
  const auto count = std::count(pg.labels.begin(), pg.labels.end(), phase);
  return static_cast<double>(count) / static_cast<double>(pg.labels.size());
}

PhaseGrid make_cubic_inclusion(const GridShape& shape, double volume_fraction) {
  shape.validate();
  if (!(volume_fraction > 0.0 && volume_fraction < 1.0))
    throw FractionUnachievable("volume fraction must be in (0,1)");
  const int d = shape.dim;
  const double side_ratio = std::pow(volume_fraction, 1.0 / static_cast<double>(d));

  std::array<int, 3> side = {1, 1, 1}, start = {0, 0, 0};
  for (int a = 0; a < d; ++a) {
    const int na = shape.points[a];
    side[a] = static_cast<int>(std::lround(side_ratio * na));
    if (side[a] <= 0 || side[a] >= na)
      throw FractionUnachievable("inclusion side rounds to " + std::to_string(side[a]) +
                                 " of " + std::to_string(na) + " nodes on axis " +
                                 std::to_string(a));
    start[a] = (na - side[a]) / 2;
  }

  PhaseGrid pg;
  pg.shape = shape;
  pg.labels.assign(shape.node_count(), 0);
  pg.phase_count = 2;
  for (std::size_t k = 0; k < pg.labels.size(); ++k) {
    const auto idx = shape.node_coords(k);
    bool inside = true;
    for (int a = 0; a < d; ++a)
      inside = inside && idx[a] >= start[a] && idx[a] < start[a] + side[a];
    if (inside) pg.labels[k] = 1;
  }
  return pg;
}

PhaseGrid make_laminate(const GridShape& shape, const std::vector<double>& fractions) {
  shape.validate();
  if (fractions.empty()) throw BadFractions("no layer fractions given");
  const double sum = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9)
    throw BadFractions("layer fractions sum to " + std::to_string(sum));

  // Largest-remainder rounding of fractions to whole node counts.
  const int n0 = shape.points[0];
  std::vector<int> counts(fractions.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t p = 0; p < fractions.size(); ++p) {
    const double exact = fractions[p] * n0;
    counts[p] = static_cast<int>(std::floor(exact));
    assigned += counts[p];
    remainders.emplace_back(exact - std::floor(exact), p);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int r = 0; r < n0 - assigned; ++r) counts[remainders[r % remainders.size()].second]++;
  for (std::size_t p = 0; p < counts.size(); ++p)
    if (counts[p] == 0)
      throw FractionUnachievable("laminate layer " + std::to_string(p) + " gets zero nodes");

  std::vector<int> layer_of(n0);
  int pos = 0;
  for (std::size_t p = 0; p < counts.size(); ++p)
    for (int c = 0; c < counts[p]; ++c) layer_of[pos++] = static_cast<int>(p);

  PhaseGrid pg;
  pg.shape = shape;
  pg.labels.assign(shape.node_count(), 0);
  pg.phase_count = static_cast<int>(fractions.size());
  for (std::size_t k = 0; k < pg.labels.size(); ++k)
    pg.labels[k] = layer_of[shape.node_coords(k)[0]];
  return pg;
}

namespace {

// Reads the next whitespace/comment-delimited token of a PGM header.
std::string next_pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

}  // namespace

PhaseGrid load_image_threshold(const std::filesystem::path& path, double threshold, bool invert,
                               double length_x, double length_y) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableImage("cannot open " + path.string());

  const std::string magic = next_pgm_token(in);
  if (magic != "P5") throw UnreadableImage(path.string() + ": not a binary graymap (P5)");
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(next_pgm_token(in));
    height = std::stoi(next_pgm_token(in));
    maxval = std::stoi(next_pgm_token(in));
  } catch (const std::exception&) {
    throw UnreadableImage(path.string() + ": malformed header");
  }
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    throw UnreadableImage(path.string() + ": malformed header");
  if (threshold < 0.0 || threshold > maxval)
    throw std::invalid_argument("threshold outside the image value range");

  const bool two_byte = maxval > 255;
  const std::size_t npix = static_cast<std::size_t>(width) * height;
  std::vector<unsigned char> raw(npix * (two_byte ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw UnreadableImage(path.string() + ": truncated pixel data");

  PhaseGrid pg;
  pg.shape = grid_2d(width, height, length_x, length_y);
  pg.labels.assign(npix, 0);
  bool any_one = false;
  for (int iy = 0; iy < height; ++iy)
    for (int ix = 0; ix < width; ++ix) {
      const std::size_t p = static_cast<std::size_t>(iy) * width + ix;
      const unsigned value =
          two_byte ? (static_cast<unsigned>(raw[2 * p]) << 8) | raw[2 * p + 1] : raw[p];
      bool hard = static_cast<double>(value) <= threshold;
      if (invert) hard = !hard;
      const std::size_t node = pg.shape.node_index({ix, iy, 0});
      pg.labels[node] = hard ? 1 : 0;
      any_one = any_one || hard;
    }
  pg.phase_count = any_one ? 2 : 1;
  return pg;
}

void write_phase_pgm(const PhaseGrid& pg, const std::filesystem::path& path) {
  if (pg.shape.dim != 2) throw IoFailure("only 2-d phase grids can be written as graymaps");
  if (pg.phase_count > 2) throw IoFailure("only two-phase grids can be written as graymaps");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  const int w = pg.shape.points[0], h = pg.shape.points[1];
  out << "P5\n" << w << " " << h << "\n255\n";
  for (int iy = 0; iy < h; ++iy)
    for (int ix = 0; ix < w; ++ix) {
      const unsigned char pix = pg.labels[pg.shape.node_index({ix, iy, 0})] == 1 ? 0 : 255;
      out.put(static_cast<char>(pix));
    }
  if (!out) throw IoFailure("write failed: " + path.string());
}

namespace {

MaterialFields bind_impl(const PhaseGrid& pg, const std::vector<PlasticParams>& per_phase) {
  if (static_cast<int>(per_phase.size()) != pg.phase_count)
    throw ArityMismatch("got " + std::to_string(per_phase.size()) + " parameter sets for " +
                        std::to_string(pg.phase_count) + " phases");
  MaterialFields mf{ScalarField(pg.shape), ScalarField(pg.shape), ScalarField(pg.shape),
                    ScalarField(pg.shape)};
  for (std::size_t k = 0; k < pg.labels.size(); ++k) {
    const PlasticParams& p = per_phase[static_cast<std::size_t>(pg.labels[k])];
    mf.lambda[k] = p.elastic.lame_lambda();
    mf.mu[k] = p.elastic.lame_mu();
    mf.tau_y0[k] = p.tau_y0;
    mf.hardening[k] = p.hardening;
  }
  return mf;
}

}  // namespace

MaterialFields bind_parameters(const PhaseGrid& pg, const std::vector<PlasticParams>& per_phase) {
  return bind_impl(pg, per_phase);
}

MaterialFields bind_parameters(const PhaseGrid& pg, const std::vector<ElasticParams>& per_phase) {
  std::vector<PlasticParams> pp;
  pp.reserve(per_phase.size());
  for (const auto& e : per_phase) pp.push_back(PlasticParams{e, 0.0, 0.0});
  return bind_impl(pg, pp);
}

}  // namespace fftmech
