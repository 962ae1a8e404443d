#include "polartomo/array_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "oracles.hpp"
#include "polartomo/stategen.hpp"

namespace pt = polartomo;
namespace fs = std::filesystem;

namespace {

class ArrayIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polartomo_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  pt::IoErrc read_error(const fs::path& p) {
    try {
      pt::read_array(p);
    } catch (const pt::ArrayIoError& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error reading " << p;
    return pt::IoErrc::open_failed;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(ArrayIo, DensityRoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  const auto g = pt::make_grid(8, 1.5);
  const auto rho = pt::testing::random_density(g, 3, rng);
  const auto path = dir_ / "rho.bin";
  pt::write_density(rho, path, {"unit test", 42});
  const auto back = pt::read_density(path);
  EXPECT_EQ(back.grid, g);
  EXPECT_EQ(back.elements, rho.elements);

  const auto raw = pt::read_array(path);
  EXPECT_EQ(raw.meta.kind, pt::ArrayKind::density);
  EXPECT_EQ(raw.meta.provenance.command, "unit test");
  EXPECT_EQ(raw.meta.provenance.seed.value(), 42u);
  EXPECT_EQ(fs::file_size(path), 8u * 8u * 16u);
  EXPECT_TRUE(fs::exists(dir_ / "rho.json"));
}

TEST_F(ArrayIo, PayloadIsLittleEndianRowMajorInterleaved) {
  const auto g = pt::make_grid(2, 1.0);
  pt::ComplexMatrix m(2, 2);
  m << pt::Complex(1, 2), pt::Complex(3, 4), pt::Complex(5, 6), pt::Complex(7, 8);
  pt::write_density({m, g}, dir_ / "m.bin");
  std::ifstream in(dir_ / "m.bin", std::ios::binary);
  unsigned char bytes[64];
  in.read(reinterpret_cast<char*>(bytes), 64);
  ASSERT_EQ(in.gcount(), 64);
  for (int k = 0; k < 8; ++k) {
    const double expected = k + 1.0;
    std::uint64_t w = 0;
    for (int b = 7; b >= 0; --b) w = (w << 8) | bytes[8 * k + b];
    EXPECT_EQ(std::bit_cast<double>(w), expected);
  }
}

TEST_F(ArrayIo, FramesAndMosaicRoundTrip) {
  const auto g = pt::make_grid(6, 2.0);
  const auto rho = pt::assemble_density_matrix(pt::hermite_gauss_benchmark_mixture(), g);
  auto frames = pt::forward_frames(rho, g);
  frames.photon_budget = 1e6;
  pt::write_frames(frames, dir_ / "f.bin");
  pt::write_mosaic(frames, dir_ / "m.bin");
  for (const char* name : {"f.bin", "m.bin"}) {
    const auto back = pt::read_frames(dir_ / name);
    EXPECT_EQ(back.grid, g);
    EXPECT_EQ(back.gamma_d, frames.gamma_d);
    EXPECT_EQ(back.gamma_a, frames.gamma_a);
    EXPECT_EQ(back.gamma_r, frames.gamma_r);
    EXPECT_EQ(back.gamma_l, frames.gamma_l);
    EXPECT_EQ(back.photon_budget.value(), 1e6);
  }
  const auto meta = pt::read_array(dir_ / "m.bin").meta;
  EXPECT_EQ(meta.kind, pt::ArrayKind::mosaic);
  EXPECT_EQ(meta.shape, (std::vector<std::size_t>{12, 12}));
  EXPECT_EQ(pt::read_array(dir_ / "f.bin").meta.shape, (std::vector<std::size_t>{4, 6, 6}));
}

TEST_F(ArrayIo, ModeRoundTrip) {
  const auto g = pt::make_grid(40, 2.0);
  const auto psi = pt::eval_hg_state(3, 0.15, g);
  pt::write_mode(psi, dir_ / "mode.bin");
  const auto back = pt::read_mode(dir_ / "mode.bin");
  EXPECT_EQ(back.amplitudes, psi.amplitudes);
  EXPECT_EQ(back.grid, g);
}

TEST_F(ArrayIo, TruncatedPayloadIsLengthMismatch) {
  const auto g = pt::make_grid(4, 1.0);
  pt::write_density({pt::ComplexMatrix::Identity(4, 4) / 4.0, g}, dir_ / "r.bin");
  fs::resize_file(dir_ / "r.bin", 100);
  EXPECT_EQ(read_error(dir_ / "r.bin"), pt::IoErrc::length_mismatch);
  EXPECT_THROW(pt::read_density(dir_ / "r.bin"), pt::ArrayIoError);
}

TEST_F(ArrayIo, SidecarErrors) {
  const auto g = pt::make_grid(4, 1.0);
  const auto path = dir_ / "r.bin";
  pt::write_density({pt::ComplexMatrix::Identity(4, 4) / 4.0, g}, path);
  const auto side = pt::sidecar_path(path);
  std::ifstream in(side);
  const auto original = nlohmann::json::parse(in);
  in.close();

  auto rewrite = [&](const nlohmann::json& j) { pt::write_text_file(side, j.dump()); };

  auto j = original;
  j["kind"] = "hologram";
  rewrite(j);
  EXPECT_EQ(read_error(path), pt::IoErrc::unknown_kind);

  j = original;
  j.erase("shape");
  rewrite(j);
  EXPECT_EQ(read_error(path), pt::IoErrc::schema_violation);

  j = original;
  j["dtype"] = "float32";
  rewrite(j);
  EXPECT_EQ(read_error(path), pt::IoErrc::schema_violation);

  j = original;
  j["shape"] = {4, 5};
  rewrite(j);
  EXPECT_EQ(read_error(path), pt::IoErrc::schema_violation);

  pt::write_text_file(side, "{not json");
  EXPECT_EQ(read_error(path), pt::IoErrc::schema_violation);

  fs::remove(side);
  EXPECT_EQ(read_error(path), pt::IoErrc::open_failed);
}

TEST_F(ArrayIo, KindMismatchRejectedByTypedReaders) {
  const auto g = pt::make_grid(4, 1.0);
  pt::write_mode(pt::eval_hg_state(0, 0.15, g), dir_ / "mode.bin");
  EXPECT_THROW(pt::read_density(dir_ / "mode.bin"), pt::ArrayIoError);
  EXPECT_THROW(pt::read_frames(dir_ / "mode.bin"), pt::ArrayIoError);
}

TEST_F(ArrayIo, NoTemporaryFilesLeftBehind) {
  const auto g = pt::make_grid(4, 1.0);
  pt::write_density({pt::ComplexMatrix::Identity(4, 4) / 4.0, g}, dir_ / "r.bin");
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    (void)entry;
    ++count;
  }
  EXPECT_EQ(count, 2u);
}
