// Copyright 2026 The synthvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthvol/volio.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <system_error>

#include "json.hpp"

#include "synthvol/digest.hpp"
#include "synthvol/error.hpp"

namespace synthvol {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::int16_t kDtUint8 = 2;
constexpr std::int16_t kDtUint16 = 512;
constexpr char kNiftiMagic[4] = {'n', '+', '1', '\0'};

class LeWriter {
 public:
  explicit LeWriter(std::vector<std::uint8_t>& buf) : buf_(buf) {}
  void u8(std::size_t off, std::uint8_t v) { buf_.at(off) = v; }
  void i16(std::size_t off, std::int16_t v) { put(off, static_cast<std::uint16_t>(v), 2); }
  void i32(std::size_t off, std::int32_t v) { put(off, static_cast<std::uint32_t>(v), 4); }
  void f32(std::size_t off, float v) { put(off, std::bit_cast<std::uint32_t>(v), 4); }
  void bytes(std::size_t off, const char* data, std::size_t n) {
    std::memcpy(buf_.data() + off, data, n);
  }

 private:
  void put(std::size_t off, std::uint32_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.at(off + i) = static_cast<std::uint8_t>(v >> (8 * i));
  }
  std::vector<std::uint8_t>& buf_;
};

class LeReader {
 public:
  explicit LeReader(std::span<const std::uint8_t> buf) : buf_(buf) {}
  std::int16_t i16(std::size_t off) const { return static_cast<std::int16_t>(get(off, 2)); }
  std::int32_t i32(std::size_t off) const { return static_cast<std::int32_t>(get(off, 4)); }
  float f32(std::size_t off) const {
    return std::bit_cast<float>(static_cast<std::uint32_t>(get(off, 4)));
  }

 private:
  std::uint32_t get(std::size_t off, int n) const {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint32_t>(buf_[off + i]) << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> buf_;
};

void check_header_matches(const Dims& dims, const VolumeHeader& header, ValueKind kind) {
  if (header.dims != dims) throw ParameterError("volume dims do not match header");
  if (header.kind != kind) throw ParameterError("volume value kind does not match header");
}

void check_dims(const Dims& dims) {
  if (dims.height < 1 || dims.width < 1 || dims.depth < 1 || dims.height > 32767 ||
      dims.width > 32767 || dims.depth > 32767) {
    throw ParameterError("volume dims must lie in [1, 32767]");
  }
}

std::vector<std::uint8_t> nifti_header(const Dims& dims, ValueKind kind) {
  check_dims(dims);
  std::vector<std::uint8_t> buf(kNiftiVoxOffset, 0);
  LeWriter w(buf);
  w.i32(0, static_cast<std::int32_t>(kNiftiHeaderSize));  // sizeof_hdr
  w.u8(38, 'r');                                          // regular
  const std::int16_t dim[8] = {3,
                               static_cast<std::int16_t>(dims.width),
                               static_cast<std::int16_t>(dims.height),
                               static_cast<std::int16_t>(dims.depth),
                               1, 1, 1, 1};
  for (int i = 0; i < 8; ++i) w.i16(40 + 2 * i, dim[i]);
  const bool image = kind == ValueKind::kImageU8;
  w.i16(70, image ? kDtUint8 : kDtUint16);  // datatype
  w.i16(72, image ? 8 : 16);                // bitpix
  const float pixdim[8] = {1, 1, 1, 1, 0, 0, 0, 0};
  for (int i = 0; i < 8; ++i) w.f32(76 + 4 * i, pixdim[i]);
  w.f32(108, static_cast<float>(kNiftiVoxOffset));  // vox_offset
  w.f32(112, 1.0f);                                 // scl_slope
  w.f32(116, 0.0f);                                 // scl_inter
  const char descrip[] = "synthvol";
  w.bytes(148, descrip, sizeof(descrip) - 1);
  w.i16(252, 1);  // qform_code
  w.i16(254, 1);  // sform_code
  // quatern_b/c/d and qoffset stay zero: identity rotation at the origin.
  w.f32(280, 1.0f);  // srow_x[0]
  w.f32(300, 1.0f);  // srow_y[1]
  w.f32(320, 1.0f);  // srow_z[2]
  w.bytes(344, kNiftiMagic, 4);
  return buf;
}

void append_payload(std::vector<std::uint8_t>& out, const ImageVolume& v) {
  out.insert(out.end(), v.values().begin(), v.values().end());
}

void append_payload(std::vector<std::uint8_t>& out, const LabelVolume& v) {
  out.reserve(out.size() + 2 * v.size());
  for (Label x : v.values()) {
    out.push_back(static_cast<std::uint8_t>(x & 0xFF));
    out.push_back(static_cast<std::uint8_t>(x >> 8));
  }
}

AnyVolume decode_payload(std::span<const std::uint8_t> payload, const Dims& dims,
                         ValueKind kind) {
  if (kind == ValueKind::kImageU8) {
    ImageVolume v(dims);
    std::copy(payload.begin(), payload.begin() + v.size(), v.values().begin());
    return v;
  }
  LabelVolume v(dims);
  auto dst = v.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<Label>(payload[2 * i] | (payload[2 * i + 1] << 8));
  }
  return v;
}

template <typename V>
std::vector<std::uint8_t> encode_nifti_impl(const V& volume) {
  auto out = nifti_header(volume.dims(), VolumeHeader::for_volume(volume).kind);
  append_payload(out, volume);
  return out;
}

template <typename V>
void write_raw_pair_impl(const V& volume, const VolumeHeader& header,
                         const fs::path& prefix) {
  check_header_matches(volume.dims(), header, VolumeHeader::for_volume(volume).kind);
  const auto payload = encode_raw(volume);
  const std::string sidecar = raw_sidecar_json(header, payload);
  fs::path raw = prefix;
  raw += ".raw";
  fs::path meta = prefix;
  meta += ".json";
  write_file(raw, payload);
  write_file(meta, std::span<const std::uint8_t>(
                       reinterpret_cast<const std::uint8_t*>(sidecar.data()), sidecar.size()));
}

}  // namespace

int bytes_per_voxel(ValueKind kind) { return kind == ValueKind::kImageU8 ? 1 : 2; }

std::string to_string(ValueKind kind) {
  return kind == ValueKind::kImageU8 ? "u8-image" : "u16-label";
}

ValueKind value_kind_from_string(const std::string& text) {
  if (text == "u8-image") return ValueKind::kImageU8;
  if (text == "u16-label") return ValueKind::kLabelU16;
  throw FormatError("unknown value_kind '" + text + "'");
}

const ImageVolume& LoadedVolume::image() const {
  if (const auto* v = std::get_if<ImageVolume>(&volume)) return *v;
  throw FormatError("expected an u8-image volume, found u16-label");
}

const LabelVolume& LoadedVolume::labels() const {
  if (const auto* v = std::get_if<LabelVolume>(&volume)) return *v;
  throw FormatError("expected an u16-label volume, found u8-image");
}

std::vector<std::uint8_t> encode_nifti(const ImageVolume& volume) {
  return encode_nifti_impl(volume);
}

std::vector<std::uint8_t> encode_nifti(const LabelVolume& volume) {
  return encode_nifti_impl(volume);
}

LoadedVolume decode_nifti(std::span<const std::uint8_t> bytes, const std::string& source) {
  auto fail = [&](const std::string& what) {
    return FormatError(source + ": " + what);
  };
  if (bytes.size() < kNiftiVoxOffset) throw fail("truncated header");
  const LeReader r(bytes);
  if (r.i32(0) != static_cast<std::int32_t>(kNiftiHeaderSize)) {
    throw fail("invalid sizeof_hdr " + std::to_string(r.i32(0)));
  }
  if (std::memcmp(bytes.data() + 344, kNiftiMagic, 4) != 0) {
    throw fail("invalid magic (expected single-file \"n+1\")");
  }
  std::int16_t dim[8];
  for (int i = 0; i < 8; ++i) dim[i] = r.i16(40 + 2 * i);
  if (dim[0] != 3) throw fail("unsupported dim[0] " + std::to_string(dim[0]));
  for (int i = 1; i <= 3; ++i) {
    if (dim[i] < 1) throw fail("invalid dim[" + std::to_string(i) + "]");
  }
  const Dims dims{dim[2], dim[1], dim[3]};
  ValueKind kind;
  const std::int16_t datatype = r.i16(70);
  if (datatype == kDtUint8) {
    kind = ValueKind::kImageU8;
  } else if (datatype == kDtUint16) {
    kind = ValueKind::kLabelU16;
  } else {
    throw fail("unsupported datatype " + std::to_string(datatype));
  }
  if (r.i16(72) != 8 * bytes_per_voxel(kind)) {
    throw fail("invalid bitpix " + std::to_string(r.i16(72)));
  }
  const float vox_offset = r.f32(108);
  if (vox_offset != static_cast<float>(kNiftiVoxOffset)) {
    throw fail("unsupported vox_offset " + std::to_string(vox_offset));
  }
  const float slope = r.f32(112);
  if (slope != 0.0f && slope != 1.0f) throw fail("unsupported scl_slope");
  if (slope != 0.0f && r.f32(116) != 0.0f) throw fail("unsupported scl_inter");

  const std::size_t payload = dims.voxel_count() * bytes_per_voxel(kind);
  if (bytes.size() < kNiftiVoxOffset + payload) throw fail("truncated voxel data");

  VolumeHeader header{dims, kind};
  for (int i = 0; i < 3; ++i) header.spacing[i] = r.f32(80 + 4 * i);
  return {header, decode_payload(bytes.subspan(kNiftiVoxOffset, payload), dims, kind)};
}

void write_nifti(const ImageVolume& volume, const VolumeHeader& header,
                 const fs::path& path) {
  check_header_matches(volume.dims(), header, ValueKind::kImageU8);
  write_file(path, encode_nifti(volume));
}

void write_nifti(const LabelVolume& volume, const VolumeHeader& header,
                 const fs::path& path) {
  check_header_matches(volume.dims(), header, ValueKind::kLabelU16);
  write_file(path, encode_nifti(volume));
}

LoadedVolume read_nifti(const fs::path& path) {
  const auto bytes = read_file(path);
  return decode_nifti(bytes, path.string());
}

std::vector<std::uint8_t> encode_raw(const ImageVolume& volume) {
  std::vector<std::uint8_t> out;
  append_payload(out, volume);
  return out;
}

std::vector<std::uint8_t> encode_raw(const LabelVolume& volume) {
  std::vector<std::uint8_t> out;
  append_payload(out, volume);
  return out;
}

std::string raw_sidecar_json(const VolumeHeader& header,
                             std::span<const std::uint8_t> payload) {
  json j;
  j["format"] = "synthvol-raw";
  j["dims"] = {{"height", header.dims.height},
               {"width", header.dims.width},
               {"depth", header.dims.depth}};
  j["axis_order"] = "x-fastest (x = width, y = height, z = depth)";
  j["value_kind"] = to_string(header.kind);
  j["bytes_per_voxel"] = bytes_per_voxel(header.kind);
  j["byte_order"] = "little-endian";
  j["payload_bytes"] = payload.size();
  j["spacing"] = header.spacing;
  j["digest"] = content_digest(payload);
  return j.dump(2) + "\n";
}

void write_raw_pair(const ImageVolume& volume, const VolumeHeader& header,
                    const fs::path& prefix) {
  write_raw_pair_impl(volume, header, prefix);
}

void write_raw_pair(const LabelVolume& volume, const VolumeHeader& header,
                    const fs::path& prefix) {
  write_raw_pair_impl(volume, header, prefix);
}

LoadedVolume read_raw_pair(const fs::path& prefix) {
  fs::path raw = prefix;
  raw += ".raw";
  fs::path meta = prefix;
  meta += ".json";
  const auto meta_bytes = read_file(meta);
  json j;
  try {
    j = json::parse(meta_bytes.begin(), meta_bytes.end());
  } catch (const json::exception& e) {
    throw FormatError(meta.string() + ": invalid sidecar JSON: " + e.what());
  }
  VolumeHeader header;
  std::size_t declared = 0;
  std::string digest;
  try {
    header.dims = {j.at("dims").at("height").get<int>(), j.at("dims").at("width").get<int>(),
                   j.at("dims").at("depth").get<int>()};
    header.kind = value_kind_from_string(j.at("value_kind").get<std::string>());
    header.spacing = j.at("spacing").get<std::array<double, 3>>();
    if (j.at("byte_order").get<std::string>() != "little-endian") {
      throw FormatError(meta.string() + ": unsupported byte_order");
    }
    declared = j.at("payload_bytes").get<std::size_t>();
    digest = j.at("digest").get<std::string>();
  } catch (const json::exception& e) {
    throw FormatError(meta.string() + ": invalid sidecar field: " + e.what());
  }
  if (header.dims.height < 1 || header.dims.width < 1 || header.dims.depth < 1) {
    throw FormatError(meta.string() + ": invalid dims");
  }
  const std::size_t expected = header.dims.voxel_count() * bytes_per_voxel(header.kind);
  if (declared != expected) {
    throw FormatError(meta.string() + ": payload_bytes disagrees with dims");
  }
  const auto payload = read_file(raw);
  if (payload.size() != expected) {
    throw FormatError(raw.string() + ": payload size " + std::to_string(payload.size()) +
                      ", expected " + std::to_string(expected));
  }
  if (content_digest(payload) != digest) {
    throw FormatError(raw.string() + ": digest mismatch");
  }
  return {header, decode_payload(payload, header.dims, header.kind)};
}

LoadedVolume read_volume(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".nii") return read_nifti(path);
  if (ext == ".raw" || ext == ".json") {
    fs::path prefix = path;
    prefix.replace_extension();
    return read_raw_pair(prefix);
  }
  throw FormatError(path.string() + ": unrecognized volume file extension");
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::path tmp = path;
  tmp += ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failure on " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " +
                  ec.message());
  }
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

}  // namespace synthvol
