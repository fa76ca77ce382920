#pragma once

#include <string>

#include "wcr/image.hpp"

namespace wcr {

// Binary PGM ("P5") with 8- or 16-bit maxval; samples are scaled to [0,1] by
// maxval on read. 16-bit payloads are big-endian per the PNM convention.
// Malformed input raises FormatError carrying the offending byte offset.
ImageGrid read_pgm(const std::string& path);

// Emits 16-bit binary PGM (maxval 65535); samples are clamped to [0,1] and
// rounded, so read(write(img)) deviates by at most 1/65535 per sample.
void write_pgm(const ImageGrid& img, const std::string& path);

} // namespace wcr
