#include "zenerwave/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace zenerwave {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string frequency_response_csv(const FrequencyResponse& fr) {
    std::string out = "omega,re_E,im_E,re_M,im_M\n";
    for (std::size_t i = 0; i < fr.omegas.size(); ++i) {
        out += format_double(fr.omegas[i]);
        out += ',';
        out += format_double(fr.E[i].real());
        out += ',';
        out += format_double(fr.E[i].imag());
        out += ',';
        out += format_double(fr.M[i].real());
        out += ',';
        out += format_double(fr.M[i].imag());
        out += '\n';
    }
    return out;
}

std::string kernel_grid_csv(const KernelGrid& grid) {
    std::string out = "x,t,K\n";
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
        for (std::size_t it = 0; it < grid.ts.size(); ++it) {
            out += format_double(grid.xs[ix]);
            out += ',';
            out += format_double(grid.ts[it]);
            out += ',';
            out += format_double(grid.at(ix, it));
            out += '\n';
        }
    return out;
}

std::string kernel_grid_plotdata(const KernelGrid& grid) {
    std::string out;
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
        out += "# x = " + format_double(grid.xs[ix]) + "\n";
        for (std::size_t it = 0; it < grid.ts.size(); ++it) {
            out += format_double(grid.ts[it]);
            out += ' ';
            out += format_double(grid.at(ix, it));
            out += '\n';
        }
        if (ix + 1 < grid.xs.size()) out += '\n';
    }
    return out;
}

std::string wave_field_csv(const WaveField& field) {
    std::string out = "x,t,u\n";
    for (std::size_t ix = 0; ix < field.xs.size(); ++ix)
        for (std::size_t it = 0; it < field.ts.size(); ++it) {
            out += format_double(field.xs[ix]);
            out += ',';
            out += format_double(field.ts[it]);
            out += ',';
            out += format_double(field.at(ix, it));
            out += '\n';
        }
    return out;
}

void write_file_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(std::string_view data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

}  // namespace zenerwave
