#pragma once

#include <filesystem>
#include <vector>

#include "fftmech/fields.hpp"
#include "fftmech/material.hpp"

namespace fftmech {

/// Integer phase label per node.
struct PhaseGrid {
  GridShape shape;
  std::vector<int> labels;  // one entry per node, values in [0, phase_count)
  int phase_count = 1;
};

/// Fraction of nodes carrying the given label.
double phase_fraction(const PhaseGrid& pg, int phase);

/// Axis-aligned centered cube (square in 2-d) of phase 1 in a phase-0
/// matrix. The side along each axis is the integer node count nearest to
/// fraction^(1/dim) * N_a; throws FractionUnachievable when that rounds
/// to 0 or to the full axis.
PhaseGrid make_cubic_inclusion(const GridShape& shape, double volume_fraction);

/// Layers normal to axis 0 with node counts proportional to `fractions`
/// (must sum to 1 within 1e-9); layer p carries phase p.
PhaseGrid make_laminate(const GridShape& shape, const std::vector<double>& fractions);

/// Threshold a binary portable graymap (P5): label 1 where the pixel
/// value is <= threshold (dark pixels are the hard phase), 0 elsewhere;
/// `invert` flips the convention. The image dimensions become the grid,
/// with the given physical edge lengths.
PhaseGrid load_image_threshold(const std::filesystem::path& path, double threshold,
                               bool invert = false, double length_x = 1.0,
                               double length_y = 1.0);

/// Write a two-phase grid as a P5 graymap (phase 1 -> 0, phase 0 -> 255),
/// the exact inverse of load_image_threshold for any mid-range threshold.
void write_phase_pgm(const PhaseGrid& pg, const std::filesystem::path& path);

/// Per-node constitutive parameter fields bound from per-phase values.
struct MaterialFields {
  ScalarField lambda;
  ScalarField mu;
  ScalarField tau_y0;
  ScalarField hardening;
};

/// Throws ArityMismatch unless one parameter set per phase is given.
MaterialFields bind_parameters(const PhaseGrid& pg, const std::vector<PlasticParams>& per_phase);
MaterialFields bind_parameters(const PhaseGrid& pg, const std::vector<ElasticParams>& per_phase);

}  // namespace fftmech
