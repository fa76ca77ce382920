#include "wcr/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "wcr/errors.hpp"

namespace wcr {

namespace {

bool is_pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments, then parses an unsigned decimal token.
long parse_header_int(const std::string& data, std::size_t& pos, const char* field) {
    while (pos < data.size()) {
        if (is_pnm_space(data[pos])) {
            ++pos;
        } else if (data[pos] == '#') {
            while (pos < data.size() && data[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= data.size())
        throw FormatError(std::string("read_pgm: missing ") + field, data.size());
    if (data[pos] < '0' || data[pos] > '9')
        throw FormatError(std::string("read_pgm: bad character in ") + field, pos);
    long value = 0;
    while (pos < data.size() && data[pos] >= '0' && data[pos] <= '9') {
        value = value * 10 + (data[pos] - '0');
        if (value > 1000000000L)
            throw FormatError(std::string("read_pgm: ") + field + " out of range", pos);
        ++pos;
    }
    return value;
}

} // namespace

ImageGrid read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_pgm: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();

    if (data.size() < 2 || data[0] != 'P')
        throw FormatError("read_pgm: not a PNM file", 0);
    if (data[1] != '5')
        throw FormatError(std::string("read_pgm: unsupported PNM variant 'P") + data[1] +
                              "', only binary P5 is accepted",
                          1);

    std::size_t pos = 2;
    const long width = parse_header_int(data, pos, "width");
    const long height = parse_header_int(data, pos, "height");
    const long maxval = parse_header_int(data, pos, "maxval");
    if (width <= 0 || height <= 0)
        throw FormatError("read_pgm: dimensions must be positive", pos);
    if (maxval <= 0 || maxval > 65535)
        throw FormatError("read_pgm: maxval must lie in [1, 65535]", pos);

    if (pos >= data.size() || !is_pnm_space(data[pos]))
        throw FormatError("read_pgm: expected single whitespace before payload", pos);
    ++pos;

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
    if (data.size() - pos < count * bytes_per_sample)
        throw FormatError("read_pgm: truncated payload", data.size());

    ImageGrid img(static_cast<int>(width), static_cast<int>(height));
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t raw;
        if (bytes_per_sample == 1) {
            raw = static_cast<std::uint8_t>(data[pos + i]);
        } else {
            raw = (static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + 2 * i])) << 8) |
                  static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + 2 * i + 1]));
        }
        if (raw > static_cast<std::uint32_t>(maxval))
            throw FormatError("read_pgm: sample exceeds maxval", pos + i * bytes_per_sample);
        img.samples[i] = static_cast<double>(raw) * scale;
    }
    return img;
}

void write_pgm(const ImageGrid& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_pgm: cannot open '" + path + "'");
    out << "P5\n" << img.width << " " << img.height << "\n65535\n";
    std::string payload;
    payload.reserve(img.size() * 2);
    for (double v : img.samples) {
        if (!std::isfinite(v)) throw NumericError("write_pgm: non-finite sample");
        const double clamped = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        const auto q = static_cast<std::uint16_t>(std::lround(clamped * 65535.0));
        payload.push_back(static_cast<char>(q >> 8));
        payload.push_back(static_cast<char>(q & 0xff));
    }
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("write_pgm: write failed for '" + path + "'");
}

} // namespace wcr
