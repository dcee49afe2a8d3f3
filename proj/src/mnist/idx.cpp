#include "qsnn/mnist/idx.hpp"

#include <fstream>
#include <iterator>

namespace qsnn::mnist {

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Reader {
 public:
  Reader(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
      : path_(path), bytes_(bytes) {}

  std::uint32_t be32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

  const std::uint8_t* take(std::size_t n) {
    need(n);
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw TruncatedError(path_, bytes_.size(), pos_ + n);
  }

  const std::filesystem::path& path_;
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

IdxHeader parse_header(Reader& r, const std::filesystem::path& path,
                       std::uint32_t expected_magic) {
  IdxHeader h;
  h.magic = r.be32();
  if (h.magic != expected_magic) throw BadMagicError(path, expected_magic, h.magic);
  h.count = r.be32();
  if (h.magic == kImageMagic) {
    h.rows = r.be32();
    h.cols = r.be32();
  }
  return h;
}

void put_be32(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b, 4);
}

}  // namespace

BadMagicError::BadMagicError(const std::filesystem::path& path, std::uint32_t expected,
                             std::uint32_t found)
    : IdxError(path.string() + ": bad magic " + std::to_string(found) + ", expected " +
               std::to_string(expected)) {}

TruncatedError::TruncatedError(const std::filesystem::path& path, std::size_t offset,
                               std::size_t wanted)
    : IdxError(path.string() + ": truncated at byte offset " + std::to_string(offset) +
               " (needed " + std::to_string(wanted) + " bytes)"),
      offset_(offset) {}

CountMismatchError::CountMismatchError(std::size_t images, std::size_t labels)
    : IdxError("count mismatch: " + std::to_string(images) + " images vs " +
               std::to_string(labels) + " labels") {}

IdxHeader read_idx_header(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  Reader r(path, bytes);
  Reader peek(path, bytes);
  const std::uint32_t magic = peek.be32();
  return parse_header(r, path, magic == kLabelMagic ? kLabelMagic : kImageMagic);
}

std::vector<RawImage> load_idx(const std::filesystem::path& images,
                               const std::filesystem::path& labels) {
  const auto ib = slurp(images);
  const auto lb = slurp(labels);
  Reader ir(images, ib);
  Reader lr(labels, lb);
  const IdxHeader ih = parse_header(ir, images, kImageMagic);
  const IdxHeader lh = parse_header(lr, labels, kLabelMagic);
  if (ih.rows != kSide || ih.cols != kSide) {
    throw IdxError(images.string() + ": expected 28x28 images, got " + std::to_string(ih.rows) +
                   "x" + std::to_string(ih.cols));
  }
  if (ih.count != lh.count) throw CountMismatchError(ih.count, lh.count);

  std::vector<RawImage> out(ih.count);
  for (auto& img : out) {
    const std::uint8_t* p = ir.take(kPixels);
    std::copy(p, p + kPixels, img.pixels.begin());
    img.label = *lr.take(1);
    if (img.label > 9) throw IdxError(labels.string() + ": label " + std::to_string(img.label));
  }
  return out;
}

void write_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
               const std::vector<RawImage>& data) {
  std::ofstream io(images, std::ios::binary);
  std::ofstream lo(labels, std::ios::binary);
  if (!io || !lo) throw IdxError("cannot write " + images.string() + " / " + labels.string());
  const auto n = static_cast<std::uint32_t>(data.size());
  put_be32(io, kImageMagic);
  put_be32(io, n);
  put_be32(io, kSide);
  put_be32(io, kSide);
  put_be32(lo, kLabelMagic);
  put_be32(lo, n);
  for (const auto& img : data) {
    io.write(reinterpret_cast<const char*>(img.pixels.data()), kPixels);
    lo.put(static_cast<char>(img.label));
  }
}

}  // namespace qsnn::mnist
