#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fftmech/errors.hpp"
#include "fftmech/microstructure.hpp"

using namespace fftmech;

TEST_CASE("cubic inclusion rounds to whole nodes and reports its fraction") {
  const GridShape shape = grid_3d(9, 9, 9);
  const double requested = std::pow(3.0 / 9.0, 3);
  const PhaseGrid pg = make_cubic_inclusion(shape, requested);
  CHECK(pg.phase_count == 2);
  CHECK(phase_fraction(pg, 1) == doctest::Approx(27.0 / 729.0));

  // the inclusion is one contiguous centered 3^3 block
  int count = 0;
  for (std::size_t k = 0; k < pg.labels.size(); ++k) {
    const auto idx = shape.node_coords(k);
    const bool inside =
        idx[0] >= 3 && idx[0] < 6 && idx[1] >= 3 && idx[1] < 6 && idx[2] >= 3 && idx[2] < 6;
    CHECK(pg.labels[k] == (inside ? 1 : 0));
    count += pg.labels[k];
  }
  CHECK(count == 27);
}

TEST_CASE("unachievable cube fractions are rejected") {
  const GridShape shape = grid_3d(9, 9, 9);
  CHECK_THROWS_AS(make_cubic_inclusion(shape, 1e-6), FractionUnachievable);  // side 0
  CHECK_THROWS_AS(make_cubic_inclusion(shape, 0.999), FractionUnachievable);  // side N
}

TEST_CASE("laminate layers split proportionally") {
  const GridShape shape = grid_2d(10, 4);
  const PhaseGrid pg = make_laminate(shape, {0.5, 0.5});
  CHECK(pg.phase_count == 2);
  CHECK(phase_fraction(pg, 0) == doctest::Approx(0.5));
  for (std::size_t k = 0; k < pg.labels.size(); ++k)
    CHECK(pg.labels[k] == (shape.node_coords(k)[0] < 5 ? 0 : 1));
}

TEST_CASE("laminate fraction validation") {
  const GridShape shape = grid_2d(10, 4);
  CHECK_THROWS_AS(make_laminate(shape, {0.5, 0.6}), BadFractions);
  CHECK_THROWS_AS(make_laminate(shape, {}), BadFractions);
  CHECK_THROWS_AS(make_laminate(shape, {0.999, 0.001}), FractionUnachievable);
}

TEST_CASE("checkerboard image thresholds to alternating labels") {
  const auto path = std::filesystem::temp_directory_path() / "fftmech_checker.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n2 2\n255\n";
    const unsigned char pix[4] = {0, 255, 255, 0};
    out.write(reinterpret_cast<const char*>(pix), 4);
  }
  const PhaseGrid pg = load_image_threshold(path, 127.0);
  CHECK(pg.shape.dim == 2);
  CHECK(pg.shape.points[0] == 2);
  CHECK(pg.shape.points[1] == 2);
  CHECK(pg.labels[pg.shape.node_index({0, 0, 0})] == 1);  // dark = hard
  CHECK(pg.labels[pg.shape.node_index({1, 0, 0})] == 0);
  CHECK(pg.labels[pg.shape.node_index({0, 1, 0})] == 0);
  CHECK(pg.labels[pg.shape.node_index({1, 1, 0})] == 1);

  const PhaseGrid inv = load_image_threshold(path, 127.0, /*invert=*/true);
  for (std::size_t k = 0; k < pg.labels.size(); ++k) CHECK(inv.labels[k] == 1 - pg.labels[k]);
  std::filesystem::remove(path);
}

TEST_CASE("all-white images collapse to a single phase") {
  const auto path = std::filesystem::temp_directory_path() / "fftmech_white.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n3 2\n255\n";
    for (int i = 0; i < 6; ++i) out.put(static_cast<char>(255));
  }
  const PhaseGrid pg = load_image_threshold(path, 127.0);
  CHECK(pg.phase_count == 1);
  for (int label : pg.labels) CHECK(label == 0);
  std::filesystem::remove(path);
}

TEST_CASE("comments and 16-bit graymaps are handled") {
  const auto path = std::filesystem::temp_directory_path() / "fftmech_16bit.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# a comment\n2 1\n65535\n";
    const unsigned char pix[4] = {0x00, 0x10, 0xff, 0x00};  // 16, 65280
    out.write(reinterpret_cast<const char*>(pix), 4);
  }
  const PhaseGrid pg = load_image_threshold(path, 1000.0);
  CHECK(pg.labels[pg.shape.node_index({0, 0, 0})] == 1);
  CHECK(pg.labels[pg.shape.node_index({1, 0, 0})] == 0);
  std::filesystem::remove(path);
}

TEST_CASE("unreadable images are reported") {
  CHECK_THROWS_AS(load_image_threshold("/nonexistent/file.pgm", 10.0), UnreadableImage);
  const auto path = std::filesystem::temp_directory_path() / "fftmech_trunc.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n4 4\n255\n";
    out.put(static_cast<char>(0));  // far too little pixel data
  }
  CHECK_THROWS_AS(load_image_threshold(path, 10.0), UnreadableImage);
  std::filesystem::remove(path);
}

TEST_CASE("image round trip reproduces the grid exactly") {
  const GridShape shape = grid_2d(7, 5);
  PhaseGrid pg = make_laminate(shape, {0.4, 0.6});
  const auto path = std::filesystem::temp_directory_path() / "fftmech_roundtrip.pgm";
  write_phase_pgm(pg, path);
  const PhaseGrid back = load_image_threshold(path, 127.0, false, shape.lengths[0],
                                              shape.lengths[1]);
  REQUIRE(back.labels.size() == pg.labels.size());
  CHECK(back.labels == pg.labels);
  std::filesystem::remove(path);
}

TEST_CASE("parameter binding follows the phase map and never mutates it") {
  const GridShape shape = grid_2d(10, 2);
  const PhaseGrid pg = make_laminate(shape, {0.5, 0.5});
  const std::vector<int> labels_before = pg.labels;

  SUBCASE("contrast pair: hard phase carries chi-scaled plastic properties") {
    const double chi = 2.0;
    PlasticParams soft{{1.0, 0.3}, 0.003, 0.01};
    PlasticParams hard = soft;
    hard.tau_y0 *= chi;
    hard.hardening *= chi;
    const MaterialFields mf = bind_parameters(pg, {soft, hard});
    for (std::size_t k = 0; k < pg.labels.size(); ++k) {
      if (pg.labels[k] == 1) {
        CHECK(mf.tau_y0[k] == doctest::Approx(2.0 * 0.003));
        CHECK(mf.hardening[k] == doctest::Approx(2.0 * 0.01));
      } else {
        CHECK(mf.tau_y0[k] == doctest::Approx(0.003));
      }
      // elastically homogeneous either way
      CHECK(mf.mu[k] == doctest::Approx(soft.elastic.lame_mu()));
    }
    CHECK(pg.labels == labels_before);
  }

  SUBCASE("stiffness contrast scales the Lame fields") {
    const MaterialFields mf =
        bind_parameters(pg, std::vector<ElasticParams>{{1.0, 0.3}, {10.0, 0.3}});
    for (std::size_t k = 0; k < pg.labels.size(); ++k) {
      const double expected = (pg.labels[k] == 1 ? 10.0 : 1.0) / (2.0 * 1.3);
      CHECK(mf.mu[k] == doctest::Approx(expected));
    }
  }

  SUBCASE("single phase gives constant fields") {
    const PhaseGrid single = make_laminate(shape, {1.0});
    const MaterialFields mf = bind_parameters(single, std::vector<ElasticParams>{{2.0, 0.2}});
    for (std::size_t k = 1; k < single.labels.size(); ++k) {
      CHECK(mf.lambda[k] == mf.lambda[0]);
      CHECK(mf.mu[k] == mf.mu[0]);
    }
  }

  SUBCASE("arity mismatches are rejected") {
    CHECK_THROWS_AS(bind_parameters(pg, std::vector<ElasticParams>{{1.0, 0.3}}), ArityMismatch);
  }
}
