#include "tfgm/io.hpp"

#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tfgm/util.hpp"

namespace tfgm {

namespace {

std::uint32_t as_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t as_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

double parse_double(const std::string& token, const std::string& path) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || errno == ERANGE) {
    throw io_error(path + ": cannot parse number '" + token + "'");
  }
  return v;
}

}  // namespace

void write_signal_csv(const std::string& path, const Signal& x) {
  std::string out = "time,amplitude\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += fmt_double(static_cast<double>(i) * x.dt);
    out += ',';
    out += fmt_double(x.samples[i]);
    out += '\n';
  }
  atomic_write(path, out);
}

Signal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (line.rfind("time,", 0) != 0) {
    throw io_error(path + ": expected a 'time,amplitude' header");
  }
  Signal x;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw io_error(path + ": malformed row '" + line + "'");
    }
    times.push_back(parse_double(line.substr(0, comma), path));
    x.samples.push_back(parse_double(line.substr(comma + 1), path));
  }
  if (x.samples.empty()) throw io_error(path + ": no samples");
  if (times.size() >= 2) {
    x.dt = times[1] - times[0];
    if (!(x.dt > 0.0)) throw io_error(path + ": non-increasing time column");
  }
  return x;
}

void write_signal_wav(const std::string& path, const Signal& x, int bits) {
  if (bits != 16 && bits != 32) {
    throw invalid_input("wav: only 16 (PCM) and 32 (float) bits supported");
  }
  const std::uint32_t rate = static_cast<std::uint32_t>(
      std::max(1.0, std::round(1.0 / x.dt)));
  const std::uint16_t format = bits == 16 ? 1 : 3;  // PCM vs IEEE float
  const std::uint16_t block = static_cast<std::uint16_t>(bits / 8);
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(x.size()) * block;

  std::string body;  // everything after "WAVE"
  body += "fmt ";
  put_u32(body, 16);
  put_u16(body, format);
  put_u16(body, 1);  // mono
  put_u32(body, rate);
  put_u32(body, rate * block);
  put_u16(body, block);
  put_u16(body, static_cast<std::uint16_t>(bits));
  if (format == 3) {
    body += "fact";
    put_u32(body, 4);
    put_u32(body, static_cast<std::uint32_t>(x.size()));
  }
  body += "data";
  put_u32(body, data_size);
  if (bits == 16) {
    for (double v : x.samples) {
      const double clamped = std::min(1.0, std::max(-1.0, v));
      const long q = std::lround(clamped * 32767.0);
      put_u16(body, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
  } else {
    for (double v : x.samples) {
      const float f = static_cast<float>(v);
      std::uint32_t u;
      std::memcpy(&u, &f, 4);
      put_u32(body, u);
    }
  }

  std::string out = "RIFF";
  put_u32(out, static_cast<std::uint32_t>(4 + body.size()));
  out += "WAVE";
  out += body;
  atomic_write(path, out);
}

Signal read_signal_wav(const std::string& path) {
  const std::string raw = read_file(path);
  if (raw.size() < 12 || raw.compare(0, 4, "RIFF") != 0 ||
      raw.compare(8, 4, "WAVE") != 0) {
    throw io_error(path + ": not a RIFF/WAVE file");
  }
  const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= raw.size()) {
    const std::string id = raw.substr(pos, 4);
    const std::uint32_t len = as_u32(bytes + pos + 4);
    const std::size_t payload = pos + 8;
    if (payload + len > raw.size()) throw io_error(path + ": truncated chunk");
    if (id == "fmt ") {
      if (len < 16) throw io_error(path + ": short fmt chunk");
      format = as_u16(bytes + payload);
      channels = as_u16(bytes + payload + 2);
      rate = as_u32(bytes + payload + 4);
      bits = as_u16(bytes + payload + 14);
    } else if (id == "data") {
      data_off = payload;
      data_len = len;
    }
    pos = payload + len + (len & 1);  // chunks are word-aligned
  }
  if (rate == 0 || data_off == 0) {
    throw io_error(path + ": missing fmt or data chunk");
  }
  if (channels != 1) throw io_error(path + ": only mono files supported");

  Signal x;
  x.dt = 1.0 / static_cast<double>(rate);
  if (format == 1 && bits == 16) {
    for (std::size_t i = 0; i + 1 < data_len; i += 2) {
      const auto v = static_cast<std::int16_t>(as_u16(bytes + data_off + i));
      x.samples.push_back(static_cast<double>(v) / 32767.0);
    }
  } else if (format == 3 && bits == 32) {
    for (std::size_t i = 0; i + 3 < data_len; i += 4) {
      const std::uint32_t u = as_u32(bytes + data_off + i);
      float f;
      std::memcpy(&f, &u, 4);
      x.samples.push_back(static_cast<double>(f));
    }
  } else {
    throw io_error(path + ": unsupported format (want PCM16 or float32)");
  }
  if (x.samples.empty()) throw io_error(path + ": no samples");
  return x;
}

void write_matrix_csv(const std::string& path, const RealMatrix& A) {
  std::string out;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      if (c) out += ',';
      out += fmt_double(A(r, c));
    }
    out += '\n';
  }
  atomic_write(path, out);
}

void write_matrix_pgm(const std::string& path, const RealMatrix& A) {
  const double max = A.size() ? A.maxCoeff() : 0.0;
  std::string out = "P5\n" + std::to_string(A.cols()) + " " +
                    std::to_string(A.rows()) + "\n255\n";
  // Bottom row of the image is matrix row 0 (DC), so frequency grows upward.
  for (Eigen::Index r = A.rows() - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      const double v = max > 0.0 ? A(r, c) / max : 0.0;
      out.push_back(static_cast<char>(
          static_cast<unsigned char>(std::lround(255.0 * v))));
    }
  }
  atomic_write(path, out);
}

void write_mask_pbm(const std::string& path, const MaskMatrix& mask) {
  std::string out = "P4\n" + std::to_string(mask.cols()) + " " +
                    std::to_string(mask.rows()) + "\n";
  for (Eigen::Index r = mask.rows() - 1; r >= 0; --r) {
    unsigned char byte = 0;
    int filled = 0;
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      byte = static_cast<unsigned char>((byte << 1) | (mask(r, c) ? 1 : 0));
      if (++filled == 8) {
        out.push_back(static_cast<char>(byte));
        byte = 0;
        filled = 0;
      }
    }
    if (filled) {
      byte = static_cast<unsigned char>(byte << (8 - filled));
      out.push_back(static_cast<char>(byte));
    }
  }
  atomic_write(path, out);
}

void write_mask_coords_csv(const std::string& path, const MaskMatrix& mask) {
  std::string out = "bin,time\n";
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      if (!mask(r, c)) continue;
      out += std::to_string(r);
      out += ',';
      out += std::to_string(c);
      out += '\n';
    }
  }
  atomic_write(path, out);
}

void write_component_summary_csv(const std::string& path,
                                 const ComponentSet& set) {
  std::string out = "id,edge_count,pixel_count,energy\n";
  for (std::size_t i = 0; i < set.components.size(); ++i) {
    const Component& c = set.components[i];
    out += std::to_string(i);
    out += ',';
    out += std::to_string(c.edge_count);
    out += ',';
    out += std::to_string(c.pixels.size());
    out += ',';
    out += fmt_double(c.energy);
    out += '\n';
  }
  atomic_write(path, out);
}

void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.parent_path().empty()
                           ? fs::path(".")
                           : target.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; open error reported below

  const fs::path tmp =
      dir / (target.filename().string() + ".tmp" +
             std::to_string(static_cast<unsigned long>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error(tmp.string() + ": cannot open for writing");
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) {
      std::remove(tmp.c_str());
      throw io_error(tmp.string() + ": write failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error(path + ": rename failed: " + std::strerror(errno));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_crc32(const std::string& path) {
  const std::string data = read_file(path);
  const auto crc =
      ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size()));
  char hex[16];
  std::snprintf(hex, sizeof(hex), "%08lx", static_cast<unsigned long>(crc));
  return hex;
}

}  // namespace tfgm
