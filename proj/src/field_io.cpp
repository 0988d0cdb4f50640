#include "shearscat/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace shearscat {

static_assert(std::endian::native == std::endian::little,
              "field format is little endian; byte swapping not implemented");

namespace {

constexpr char magic[4] = {'S', 'S', 'F', '1'};

} // namespace

void save_field(const std::string& path, const ComplexField& f, bool sidecar) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_field: cannot open " + path);
    const std::uint32_t n = static_cast<std::uint32_t>(f.n());
    const std::uint32_t zero = 0;
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&zero), 4);
    out.write(reinterpret_cast<const char*>(&zero), 4);
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(Complex)));
    if (!out) throw std::runtime_error("save_field: write failed for " + path);
    out.close();

    if (sidecar) {
        nlohmann::json meta;
        meta["n"] = f.n();
        meta["domain"] = {-Grid2D::half_width, Grid2D::half_width};
        std::ofstream side(path + ".json");
        if (!side) throw std::runtime_error("save_field: cannot open sidecar for " + path);
        side << meta.dump() << "\n";
    }
}

ComplexField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_field: cannot open " + path);
    char head[4];
    std::uint32_t n = 0, r0 = 0, r1 = 0;
    in.read(head, 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&r0), 4);
    in.read(reinterpret_cast<char*>(&r1), 4);
    if (!in || std::memcmp(head, magic, 4) != 0)
        throw std::runtime_error("load_field: bad header in " + path);
    Grid2D grid(static_cast<int>(n));
    std::vector<Complex> values(grid.size());
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(Complex)));
    if (!in || in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(Complex)))
        throw std::runtime_error("load_field: payload size mismatch in " + path);
    return ComplexField(grid, std::move(values));
}

void save_pgm(const std::string& path, const ComplexField& f, bool magnitude) {
    const int n = f.n();
    std::vector<double> img(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        img[k] = magnitude ? std::abs(f[k]) : f[k].real();
    const auto [lo_it, hi_it] = std::minmax_element(img.begin(), img.end());
    const double lo = *lo_it, hi = *hi_it;
    const double scale = (hi > lo) ? 255.0 / (hi - lo) : 0.0;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_pgm: cannot open " + path);
    out << "P5\n" << n << " " << n << "\n255\n";
    // Row 0 of the image is the top: flip x2 so the plot has y upward.
    std::vector<unsigned char> row(n);
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i)
            row[i] = static_cast<unsigned char>(std::lround((img[static_cast<std::size_t>(i) * n + j] - lo) * scale));
        out.write(reinterpret_cast<const char*>(row.data()), n);
    }
    if (!out) throw std::runtime_error("save_pgm: write failed for " + path);
}

} // namespace shearscat
