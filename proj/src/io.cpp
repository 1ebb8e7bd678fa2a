#include "swr/io.hpp"

#include "swr/errors.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace swr {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'R', '1'};

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

void put_f32(std::string& buf, float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    put_u32(buf, bits);
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::uint32_t u32() {
        unsigned char b[4];
        read(b, 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) |
               (static_cast<std::uint32_t>(b[3]) << 24);
    }
    double f64() {
        unsigned char b[8];
        read(b, 8);
        std::uint64_t bits = 0;
        for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
        return std::bit_cast<double>(bits);
    }
    float f32() { return std::bit_cast<float>(u32()); }

    void read(unsigned char* dst, std::size_t count) {
        in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in_.gcount()) != count)
            throw FormatError("volume: truncated file");
    }

private:
    std::istream& in_;
};

}  // namespace

void write_volume(const std::filesystem::path& path, const SeismicVolume& volume) {
    volume.validate();
    const GridGeometry& g = volume.geometry;

    std::string buf;
    buf.reserve(32 + 4 * volume.samples.size());
    buf.append(kMagic, 4);
    put_u32(buf, static_cast<std::uint32_t>(g.n_time));
    put_u32(buf, static_cast<std::uint32_t>(g.n_receivers));
    put_u32(buf, static_cast<std::uint32_t>(g.n_sources));
    put_f64(buf, g.dt);
    put_f64(buf, g.d_rcv);
    put_f64(buf, g.d_src);
    for (double v : volume.samples) put_f32(buf, static_cast<float>(v));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("volume: cannot open " + path.string() + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("volume: write failed for " + path.string());
}

SeismicVolume read_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("volume: cannot open " + path.string());
    Reader reader(in);

    unsigned char magic[4];
    reader.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("volume: bad magic in " + path.string());

    GridGeometry g;
    g.n_time = reader.u32();
    g.n_receivers = reader.u32();
    g.n_sources = reader.u32();
    g.dt = reader.f64();
    g.d_rcv = reader.f64();
    g.d_src = reader.f64();
    g.validate();

    SeismicVolume volume(g);
    for (double& v : volume.samples) v = static_cast<double>(reader.f32());

    char extra;
    if (in.read(&extra, 1)) throw FormatError("volume: trailing bytes in " + path.string());
    volume.validate();
    return volume;
}

void write_mask(const std::filesystem::path& path, const SourceMask& mask) {
    mask.validate();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("mask: cannot open " + path.string() + " for writing");
    out << mask.n_sources << ' ' << mask.factor << '\n';
    for (std::size_t k : mask.kept) out << k << '\n';
    if (!out) throw FormatError("mask: write failed for " + path.string());
}

SourceMask read_mask(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("mask: cannot open " + path.string());

    SourceMask mask;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("mask: empty file " + path.string());
    std::istringstream header(line);
    if (!(header >> mask.n_sources >> mask.factor))
        throw FormatError("mask: malformed header in " + path.string());

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc() || ptr != line.data() + line.size())
            throw FormatError("mask: malformed index line '" + line + "'");
        mask.kept.push_back(value);
    }
    try {
        mask.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError("mask: " + std::string(e.what()));
    }
    return mask;
}

std::string format_value(double value) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

void write_snr_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("csv: cannot open " + path.string() + " for writing");
    out << "freq_hz,snr_db\n";
    for (const auto& [freq, snr] : rows)
        out << format_value(freq) << ',' << format_value(snr) << '\n';
    if (!out) throw FormatError("csv: write failed for " + path.string());
}

void write_metric_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, double>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("csv: cannot open " + path.string() + " for writing");
    out << "metric,value\n";
    for (const auto& [name, value] : rows) out << name << ',' << format_value(value) << '\n';
    if (!out) throw FormatError("csv: write failed for " + path.string());
}

}  // namespace swr
