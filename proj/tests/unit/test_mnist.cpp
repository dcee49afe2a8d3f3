#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qsnn/mnist/encoding.hpp"
#include "qsnn/mnist/idx.hpp"
#include "qsnn/mnist/training.hpp"

using namespace qsnn;
using namespace qsnn::mnist;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qsnn_mnist_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RawImage filled(std::uint8_t value, std::uint8_t label = 0) {
  RawImage img;
  img.pixels.fill(value);
  img.label = label;
  return img;
}

RawImage random_image(Rng& rng, std::uint8_t label) {
  RawImage img;
  for (auto& p : img.pixels) p = uniform01(rng) < 0.3 ? 255 : 0;
  img.label = label;
  return img;
}

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("mnist") {

TEST_CASE("idx round trip and errors") {
  TempDir dir;
  const auto img = dir.path / "img", lab = dir.path / "lab";
  Rng rng = make_stream(60, 0);
  std::vector<RawImage> data;
  for (int i = 0; i < 7; ++i) data.push_back(random_image(rng, std::uint8_t(i % 10)));
  write_idx(img, lab, data);

  const auto h = read_idx_header(img);
  CHECK(h.magic == kImageMagic);
  CHECK(h.count == 7);
  CHECK(h.rows == 28);
  CHECK(read_idx_header(lab).magic == kLabelMagic);

  const auto back = load_idx(img, lab);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back[i].pixels == data[i].pixels);
    CHECK(back[i].label == data[i].label);
  }

  // swapped files: wrong magic
  CHECK_THROWS_AS(load_idx(lab, img), BadMagicError);

  // truncated image payload
  auto bytes = read_bytes(img);
  bytes.resize(bytes.size() - 100);
  write_bytes(dir.path / "short", bytes);
  try {
    (void)load_idx(dir.path / "short", lab);
    FAIL("expected truncation");
  } catch (const TruncatedError& e) {
    CHECK(e.offset() == bytes.size());
    CHECK(std::string(e.what()).find(std::to_string(bytes.size())) != std::string::npos);
  }

  // truncated header
  write_bytes(dir.path / "tiny", {0, 0, 8});
  CHECK_THROWS_AS(read_idx_header(dir.path / "tiny"), TruncatedError);

  // count mismatch
  std::vector<RawImage> fewer(data.begin(), data.begin() + 5);
  write_idx(dir.path / "img5", dir.path / "lab5", fewer);
  CHECK_THROWS_AS(load_idx(img, dir.path / "lab5"), CountMismatchError);

  CHECK_THROWS_AS(load_idx(dir.path / "missing", lab), IdxError);
}

TEST_CASE("bundled dataset header") {
  const fs::path images = fs::path(QSNN_DATA_DIR) / "mnist" / "images.idx3-ubyte";
  if (!fs::exists(images)) return;
  const auto h = read_idx_header(images);
  CHECK(h.magic == 2051);
  CHECK(h.rows == 28);
  CHECK(h.cols == 28);
  CHECK(h.count > 0);
}

TEST_CASE("encoding examples") {
  const auto white = encode_image(filled(255));
  CHECK(white.spike_count() == 25);
  // the padded row and column clear the bottom/right edge of the last blocks
  for (std::size_t i = 0; i < kSynapses; ++i) {
    REQUIRE(white.moments[i].has_value());
    const auto [r, c] = block_origin(i);
    if (r < 12 && c < 12) CHECK(*white.moments[i] == 511.0);
  }
  CHECK(*white.moments[24] == 1 + 2 + 8 + 16);
  CHECK(*white.moments[4] == 511 - 4 - 32 - 256);

  CHECK(encode_image(filled(0)).spike_count() == 0);
  CHECK(encode_image(filled(127)).spike_count() == 0);
  CHECK(encode_image(filled(128)).spike_count() == 25);

  // one pooled pixel at the top-left of block 7 -> bit 0 only
  RawImage one = filled(0);
  const auto [r7, c7] = block_origin(7);
  one.pixels[(2 * r7) * kSide + 2 * c7 + 1] = 200;
  const auto e = encode_image(one);
  CHECK(e.spike_count() == 1);
  CHECK(*e.moments[7] == 1.0);

  // pooled (1, 2) in block 0 is bit 5
  RawImage five = filled(0);
  five.pixels[2 * kSide + 4] = 255;
  CHECK(*encode_image(five).moments[0] == 32.0);
}

TEST_CASE("blocks tile the padded grid") {
  std::array<int, kPaddedSide * kPaddedSide> hits{};
  for (std::size_t i = 0; i < kSynapses; ++i) {
    const auto [r, c] = block_origin(i);
    for (std::size_t dr = 0; dr < kBlockSide; ++dr)
      for (std::size_t dc = 0; dc < kBlockSide; ++dc) ++hits[(r + dr) * kPaddedSide + c + dc];
  }
  for (int h : hits) CHECK(h == 1);
  const auto g = preprocess(filled(255));
  for (std::size_t i = 0; i < kPaddedSide; ++i) {
    CHECK(g[14][i] == 0);
    CHECK(g[i][14] == 0);
  }
}

TEST_CASE("encoding is deterministic and in range") {
  Rng rng = make_stream(61, 0);
  std::vector<RawImage> imgs;
  for (int i = 0; i < 100; ++i) imgs.push_back(random_image(rng, std::uint8_t(i % 2)));
  const auto all = encode_all(imgs);
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const auto again = encode_image(imgs[i]);
    CHECK(again.moments == all[i].moments);
    CHECK(all[i].label == imgs[i].label);
    for (const auto& m : all[i].moments)
      if (m) CHECK((*m >= 0.0 && *m <= kMaxMoment));
  }
  const auto cfg = all[0].to_config(std::vector<double>(kSynapses, 0.5));
  CHECK(cfg.synapse_count == kSynapses);
  CHECK(cfg.spikes.size() == all[0].spike_count());
}

TEST_CASE("binary filter") {
  std::vector<RawImage> imgs;
  for (int d = 0; d < 10; ++d) imgs.push_back(filled(0, std::uint8_t(d)));
  imgs.push_back(filled(0, 1));
  const auto kept = binary_filter(imgs);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].label == 0);
  CHECK(kept[1].label == 1);
  CHECK(kept[2].label == 1);
}

TEST_CASE("evaluation") {
  const snn::ExactProvider exact;
  Rng rng = make_stream(62, 0);
  std::vector<RawImage> imgs;
  for (int i = 0; i < 40; ++i) imgs.push_back(random_image(rng, std::uint8_t(i % 2)));
  const auto samples = encode_all(imgs);
  snn::NeuronParams p;
  p.T = 512;

  const auto blank = evaluate(samples, std::vector<double>(kSynapses, 0.0), p, exact);
  CHECK(blank.accuracy == doctest::Approx(0.5));
  CHECK(blank.confusion.tp == 0);
  CHECK(blank.confusion.fp == 0);

  const auto w = oracle::random_vector(rng, kSynapses, 0.0, 1.0);
  p.v_thr = calibrate_threshold(samples, w, p, 40);
  const auto ev = evaluate(samples, w, p, exact);
  const auto& c = ev.confusion;
  CHECK(c.total() == samples.size());
  CHECK(ev.accuracy == doctest::Approx(double(c.tp + c.tn) / double(c.total())));
  CHECK(ev.fired.size() == samples.size());
  // a median-peak threshold splits the set
  std::size_t fired = 0;
  for (bool f : ev.fired) fired += f;
  CHECK(fired > 0);
  CHECK(fired < samples.size());
  CHECK(ev.fired.size() == samples.size());
}

TEST_CASE("a repeated sample is memorized") {
  const snn::ExactProvider exact;
  Rng rng = make_stream(63, 0);
  for (std::uint8_t label : {0, 1}) {
    const auto s = encode_image(random_image(rng, label));
    const std::vector<EncodedSample> train(10, s);
    TrainConfig cfg;
    cfg.epochs = 5;
    cfg.seed = 3;
    snn::NeuronParams p;
    p.T = 512;
    const auto res = train_binary(train, train, p, exact, cfg);
    REQUIRE(res.trace.size() == 5);
    CHECK(res.trace.back().train_accuracy == 1.0);
    CHECK(res.trace.front().epoch == 1);
  }
  CHECK_THROWS_AS(train_binary({}, {}, snn::NeuronParams{}, exact, TrainConfig{}), InvalidArgument);
}

TEST_CASE("training is reproducible from the seed") {
  const snn::ExactProvider exact;
  Rng rng = make_stream(64, 0);
  std::vector<RawImage> imgs;
  for (int i = 0; i < 60; ++i) imgs.push_back(random_image(rng, std::uint8_t(i % 2)));
  const auto samples = encode_all(imgs);
  const std::vector<EncodedSample> train(samples.begin(), samples.begin() + 40), test(samples.begin() + 40, samples.end());
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 17;
  snn::NeuronParams p;
  p.T = 512;
  const auto a = train_binary(train, test, p, exact, cfg);
  const auto b = train_binary(train, test, p, exact, cfg);
  CHECK(a.weights == b.weights);
  for (std::size_t e = 0; e < a.trace.size(); ++e) {
    CHECK(a.trace[e].train_accuracy == b.trace[e].train_accuracy);
    CHECK(a.trace[e].test_accuracy == b.trace[e].test_accuracy);
  }
}

}  // TEST_SUITE
