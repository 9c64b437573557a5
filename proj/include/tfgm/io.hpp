#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfgm/graph.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/tfr.hpp"

namespace tfgm {

// --- signal files ------------------------------------------------------

// Two-column CSV with a "time,amplitude" header. Values print in the
// shortest form that parses back exactly.
void write_signal_csv(const std::string& path, const Signal& x);
Signal read_signal_csv(const std::string& path);

// WAV, PCM16 (bits=16) or IEEE float32 (bits=32), mono. PCM16 clips to
// [-1, 1) and quantizes; float32 round-trips exactly for float-valued
// samples. Sample rate is round(1/dt) clamped to at least 1 Hz.
void write_signal_wav(const std::string& path, const Signal& x, int bits = 32);
Signal read_signal_wav(const std::string& path);

// --- matrix files ------------------------------------------------------

// Dense CSV, one row per matrix row, no header.
void write_matrix_csv(const std::string& path, const RealMatrix& A);

// 8-bit PGM heatmap of a nonnegative matrix. Row 0 (DC) renders at the
// bottom of the image; values map linearly from [0, max] to [0, 255].
void write_matrix_pgm(const std::string& path, const RealMatrix& A);

// Binary PBM of a mask, same row orientation as the PGM heatmap.
void write_mask_pbm(const std::string& path, const MaskMatrix& mask);

// CSV of set pixels: header "bin,time", one row per true cell.
void write_mask_coords_csv(const std::string& path, const MaskMatrix& mask);

// CSV of per-component stats: header "id,edge_count,pixel_count,energy".
void write_component_summary_csv(const std::string& path,
                                 const ComponentSet& set);

// --- plumbing ----------------------------------------------------------

// Writes via a temp file in the same directory and renames into place, so
// a failure never leaves a truncated file at `path`.
void atomic_write(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

// CRC-32 of a file's bytes, hex-encoded; used by the run manifest.
std::string file_crc32(const std::string& path);

}  // namespace tfgm
