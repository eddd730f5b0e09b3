#ifdef WTD_WITH_GEOTIFF

#include <cstring>
#include <fstream>
#include <map>
#include <vector>

#include "wtd/grid.hpp"

// Reader for the plain subset of GeoTIFF produced by common raster tools:
// classic (non-Big) TIFF, single band, uncompressed strips, georeferencing
// from ModelPixelScale + ModelTiepoint, nodata from the GDAL_NODATA tag.

namespace wtd {

namespace {

struct TiffField {
  uint16_t type = 0;
  uint64_t count = 0;
  std::vector<unsigned char> raw;  // payload bytes, already endian-ordered as in file
};

class ByteReader {
 public:
  ByteReader(const std::vector<unsigned char>& data, bool little)
      : data_(data), little_(little) {}

  uint64_t get_uint(size_t off, size_t width) const {
    if (off + width > data_.size())
      throw Error(ErrorKind::ParseError, "tiff: truncated file");
    uint64_t v = 0;
    for (size_t i = 0; i < width; ++i) {
      const size_t idx = little_ ? off + i : off + (width - 1 - i);
      v |= static_cast<uint64_t>(data_[idx]) << (8 * i);
    }
    return v;
  }

  double get_f32(size_t off) const {
    const uint32_t bits = static_cast<uint32_t>(get_uint(off, 4));
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
  }

  double get_f64(size_t off) const {
    const uint64_t bits = get_uint(off, 8);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
  }

  size_t size() const { return data_.size(); }

 private:
  const std::vector<unsigned char>& data_;
  bool little_;
};

size_t type_size(uint16_t type) {
  switch (type) {
    case 1: case 2: case 6: case 7: return 1;   // BYTE, ASCII, SBYTE, UNDEFINED
    case 3: case 8: return 2;                   // SHORT, SSHORT
    case 4: case 9: case 11: return 4;          // LONG, SLONG, FLOAT
    case 5: case 10: case 12: return 8;         // RATIONAL, SRATIONAL, DOUBLE
    default: return 0;
  }
}

// f.raw payloads are normalized to little-endian element order on load.
uint64_t field_uint(const TiffField& f, size_t index) {
  const size_t w = type_size(f.type);
  uint64_t v = 0;
  for (size_t i = 0; i < w; ++i) v |= static_cast<uint64_t>(f.raw[index * w + i]) << (8 * i);
  return v;
}

}  // namespace

Grid read_geotiff_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open tiff: " + path);
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (data.size() < 8) throw Error(ErrorKind::ParseError, "tiff: file too small");

  bool little;
  if (data[0] == 'I' && data[1] == 'I') little = true;
  else if (data[0] == 'M' && data[1] == 'M') little = false;
  else throw Error(ErrorKind::ParseError, "tiff: bad byte-order mark");

  ByteReader r(data, little);
  if (r.get_uint(2, 2) != 42) throw Error(ErrorKind::ParseError, "tiff: bad magic");
  const size_t ifd = r.get_uint(4, 4);
  const size_t n_entries = r.get_uint(ifd, 2);

  std::map<uint16_t, TiffField> fields;
  for (size_t e = 0; e < n_entries; ++e) {
    const size_t off = ifd + 2 + e * 12;
    const uint16_t tag = static_cast<uint16_t>(r.get_uint(off, 2));
    TiffField f;
    f.type = static_cast<uint16_t>(r.get_uint(off + 2, 2));
    f.count = r.get_uint(off + 4, 4);
    const size_t bytes = type_size(f.type) * f.count;
    const size_t src = bytes <= 4 ? off + 8 : r.get_uint(off + 8, 4);
    if (src + bytes > r.size()) throw Error(ErrorKind::ParseError, "tiff: field out of range");
    f.raw.resize(bytes);
    // normalize payload into little-endian order element by element
    const size_t w = type_size(f.type);
    for (size_t i = 0; i < f.count; ++i)
      for (size_t b = 0; b < w; ++b)
        f.raw[i * w + b] = data[src + i * w + (little ? b : w - 1 - b)];
    fields[tag] = f;
  }

  auto get1 = [&](uint16_t tag, uint64_t fallback, bool required) -> uint64_t {
    auto it = fields.find(tag);
    if (it == fields.end()) {
      if (required) throw Error(ErrorKind::ParseError, "tiff: missing tag " + std::to_string(tag));
      return fallback;
    }
    return field_uint(it->second, 0);
  };

  const uint64_t width = get1(256, 0, true);
  const uint64_t height = get1(257, 0, true);
  const uint64_t bits = get1(258, 1, true);
  const uint64_t compression = get1(259, 1, false);
  const uint64_t samples = get1(277, 1, false);
  const uint64_t rows_per_strip = get1(278, height, false);
  const uint64_t sample_format = get1(339, 1, false);
  if (compression != 1) throw Error(ErrorKind::ParseError, "tiff: only uncompressed supported");
  if (samples != 1) throw Error(ErrorKind::ParseError, "tiff: only single-band supported");

  auto it_off = fields.find(273);
  auto it_cnt = fields.find(279);
  if (it_off == fields.end() || it_cnt == fields.end())
    throw Error(ErrorKind::ParseError, "tiff: missing strip layout");

  Grid g;
  g.n_cols = static_cast<int>(width);
  g.n_rows = static_cast<int>(height);

  auto it_scale = fields.find(33550);
  auto it_tie = fields.find(33922);
  if (it_scale == fields.end() || it_tie == fields.end())
    throw Error(ErrorKind::ParseError, "tiff: missing georeferencing tags");
  auto field_double = [&](const TiffField& f, size_t i) {
    uint64_t bitsv = 0;
    for (size_t b = 0; b < 8; ++b) bitsv |= static_cast<uint64_t>(f.raw[i * 8 + b]) << (8 * b);
    double d;
    std::memcpy(&d, &bitsv, 8);
    return d;
  };
  const double sx = field_double(it_scale->second, 0);
  const double sy = field_double(it_scale->second, 1);
  if (std::abs(sx - sy) > 1e-9 * sx)
    throw Error(ErrorKind::ParseError, "tiff: non-square cells unsupported");
  g.cell_size = sx;
  // tiepoint: raster (i, j, k) -> model (x, y, z); expect raster (0, 0)
  const double ti = field_double(it_tie->second, 0);
  const double tj = field_double(it_tie->second, 1);
  g.origin_lon = field_double(it_tie->second, 3) - ti * sx;
  g.origin_lat = field_double(it_tie->second, 4) + tj * sy;

  g.nodata = kDefaultNodata;
  auto it_nd = fields.find(42113);
  if (it_nd != fields.end()) {
    std::string s(reinterpret_cast<const char*>(it_nd->second.raw.data()),
                  it_nd->second.raw.size());
    while (!s.empty() && (s.back() == '\0' || s.back() == ' ')) s.pop_back();
    if (!s.empty()) g.nodata = parse_double(s);
  }

  const size_t sample_bytes = bits / 8;
  g.values.reserve(width * height);
  const size_t n_strips = it_off->second.count;
  uint64_t row = 0;
  for (size_t s = 0; s < n_strips; ++s) {
    const uint64_t strip_off = field_uint(it_off->second, s);
    const uint64_t strip_len = field_uint(it_cnt->second, s);
    const uint64_t rows_here = std::min<uint64_t>(rows_per_strip, height - row);
    if (strip_len < rows_here * width * sample_bytes)
      throw Error(ErrorKind::ParseError, "tiff: short strip");
    for (uint64_t i = 0; i < rows_here * width; ++i) {
      const size_t off = strip_off + i * sample_bytes;
      double v;
      if (sample_format == 3 && bits == 32) v = r.get_f32(off);
      else if (sample_format == 3 && bits == 64) v = r.get_f64(off);
      else if (sample_format == 2) {  // signed int
        int64_t sv = static_cast<int64_t>(r.get_uint(off, sample_bytes));
        const int shift = 64 - static_cast<int>(bits);
        v = static_cast<double>((sv << shift) >> shift);
      } else {
        v = static_cast<double>(r.get_uint(off, sample_bytes));
      }
      g.values.push_back(v);
    }
    row += rows_here;
  }
  g.validate();
  return g;
}

}  // namespace wtd

#endif  // WTD_WITH_GEOTIFF
