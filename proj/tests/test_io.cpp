#include "swr/io.hpp"

#include "swr/errors.hpp"
#include "swr/random.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace swr;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("swr_io_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("volume round trip is bit exact for float32 payloads") {
    SeismicVolume v(GridGeometry{5, 5, 12, 0.004, 30.0, 25.0});
    Rng rng(3);
    // Write float-representable values so the f64 -> f32 -> f64 trip is exact.
    for (double& s : v.samples) s = static_cast<double>(static_cast<float>(rng.gaussian()));

    const auto path = temp_file("roundtrip.swr");
    write_volume(path, v);
    const SeismicVolume back = read_volume(path);

    CHECK(back.geometry == v.geometry);
    CHECK(back.samples == v.samples);

    // Writing the reread volume reproduces the same bytes.
    const auto path2 = temp_file("roundtrip2.swr");
    write_volume(path2, back);
    CHECK(slurp(path) == slurp(path2));
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("volume header layout") {
    SeismicVolume v(GridGeometry{2, 2, 3, 0.004, 30.0, 25.0});
    const auto path = temp_file("header.swr");
    write_volume(path, v);
    const std::string bytes = slurp(path);
    REQUIRE(bytes.size() == 4 + 12 + 24 + 4ul * 2 * 2 * 3);
    CHECK(bytes.substr(0, 4) == "SWR1");
    // n_t = 3 little-endian.
    CHECK(static_cast<unsigned char>(bytes[4]) == 3);
    CHECK(static_cast<unsigned char>(bytes[5]) == 0);
    // n_r = 2, n_s = 2.
    CHECK(static_cast<unsigned char>(bytes[8]) == 2);
    CHECK(static_cast<unsigned char>(bytes[12]) == 2);
    std::filesystem::remove(path);
}

TEST_CASE("volume reader rejects bad magic, truncation, and trailing bytes") {
    SeismicVolume v(GridGeometry{3, 3, 4, 0.004, 25.0, 25.0});
    const auto path = temp_file("bad.swr");
    write_volume(path, v);
    std::string bytes = slurp(path);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "XWR1" << bytes.substr(4);
    }
    CHECK_THROWS_AS(read_volume(path), FormatError);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << bytes.substr(0, bytes.size() - 5);
    }
    CHECK_THROWS_AS(read_volume(path), FormatError);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << bytes << "zz";
    }
    CHECK_THROWS_AS(read_volume(path), FormatError);

    CHECK_THROWS_AS(read_volume(temp_file("does_not_exist.swr")), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("mask text format round trip") {
    const SourceMask mask = jittered_mask(23, 4, 11);
    const auto path = temp_file("mask.txt");
    write_mask(path, mask);

    const std::string text = slurp(path);
    CHECK(text.substr(0, text.find('\n')) == "23 4");

    const SourceMask back = read_mask(path);
    CHECK(back.n_sources == mask.n_sources);
    CHECK(back.factor == mask.factor);
    CHECK(back.kept == mask.kept);
    std::filesystem::remove(path);
}

TEST_CASE("mask reader rejects malformed input") {
    const auto path = temp_file("badmask.txt");
    {
        std::ofstream out(path, std::ios::trunc);
        out << "8 2\n1\nbanana\n";
    }
    CHECK_THROWS_AS(read_mask(path), FormatError);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "8 2\n1\n3\n7\n6\n";  // not ascending
    }
    CHECK_THROWS_AS(read_mask(path), FormatError);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "\n";
    }
    CHECK_THROWS_AS(read_mask(path), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("csv formats") {
    const auto path = temp_file("rows.csv");
    write_snr_csv(path, {{7.8125, 31.4159265}, {8.0, -2.0}});
    CHECK(slurp(path) == "freq_hz,snr_db\n7.8125,31.4159\n8,-2\n");

    write_metric_csv(path, {{"time_domain_snr_db", 13.314159}});
    CHECK(slurp(path) == "metric,value\ntime_domain_snr_db,13.3142\n");
    std::filesystem::remove(path);
}

TEST_CASE("format_value uses 6 significant digits and '.' decimals") {
    CHECK(format_value(1234567.0) == "1.23457e+06");
    CHECK(format_value(0.0001) == "0.0001");
    CHECK(format_value(-3.14159265) == "-3.14159");
    CHECK(format_value(42.0) == "42");
}

}  // TEST_SUITE
