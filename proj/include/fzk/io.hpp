// Field container format.
//
//   bytes 0..3   magic "FZK1"
//   bytes 4..7   n      int32, little endian
//   bytes 8..11  M      int32, little endian
//   bytes 12..19 L      float64, little endian
//   byte  20     real_flag, 0 or 1
//   then M^n coefficients as complex64 (float32 re, float32 im), little endian,
//   row-major over axes with each axis in ascending signed frequency
//   (-M/2, ..., -1, 0, 1, ..., M/2 - 1).
//
// A JSON sidecar (same path + ".json") repeats the header for tooling that does not
// want to parse binary. Coefficients are stored at float32 precision on purpose: the
// container is for checkpoints and plots, not for bit-exact state transport.
#ifndef FZK_IO_HPP
#define FZK_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fzk/field.hpp"

namespace fzk {
namespace detail {

inline void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f32(std::string& buf, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(buf, bits);
}

inline std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

inline std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

inline float get_f32(const unsigned char* p) {
    std::uint32_t bits = get_u32(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

// visit modes in file order: row-major, each axis ascending in signed frequency
template <class Fn>
void for_each_signed(const SpectralGrid& g, Fn&& fn) {
    const int half = g.modes / 2;
    int k[3] = {0, 0, 0};
    if (g.n == 1) {
        for (k[0] = -half; k[0] < half; ++k[0]) fn(k);
    } else if (g.n == 2) {
        for (k[0] = -half; k[0] < half; ++k[0])
            for (k[1] = -half; k[1] < half; ++k[1]) fn(k);
    } else {
        for (k[0] = -half; k[0] < half; ++k[0])
            for (k[1] = -half; k[1] < half; ++k[1])
                for (k[2] = -half; k[2] < half; ++k[2]) fn(k);
    }
}

}  // namespace detail

inline void save_field(const Field& f, const std::string& path) {
    std::string buf;
    buf.reserve(21 + 8 * f.grid.size());
    buf += "FZK1";
    detail::put_u32(buf, static_cast<std::uint32_t>(f.grid.n));
    detail::put_u32(buf, static_cast<std::uint32_t>(f.grid.modes));
    std::uint64_t lbits;
    static_assert(sizeof(double) == 8);
    std::memcpy(&lbits, &f.grid.period, 8);
    detail::put_u64(buf, lbits);
    buf.push_back(f.real_flag ? 1 : 0);
    detail::for_each_signed(f.grid, [&](const int* k) {
        const cplx& c = f.coeffs[f.grid.flat(k)];
        detail::put_f32(buf, static_cast<float>(c.real()));
        detail::put_f32(buf, static_cast<float>(c.imag()));
    });

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("short write to " + path);

    nlohmann::json side;
    side["magic"] = "FZK1";
    side["n"] = f.grid.n;
    side["M"] = f.grid.modes;
    side["L"] = f.grid.period;
    side["real_flag"] = f.real_flag;
    std::ofstream js(path + ".json", std::ios::trunc);
    js << side.dump(2) << "\n";
}

inline Field load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 21 || buf.compare(0, 4, "FZK1") != 0)
        throw std::runtime_error("not an FZK1 container: " + path);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(buf.data());
    int n = static_cast<int>(detail::get_u32(p + 4));
    int M = static_cast<int>(detail::get_u32(p + 8));
    std::uint64_t lbits = detail::get_u64(p + 12);
    double L;
    std::memcpy(&L, &lbits, 8);
    bool real_flag = p[20] != 0;

    SpectralGrid g(n, M, L);
    if (buf.size() != 21 + 8 * g.size())
        throw std::runtime_error("truncated FZK1 container: " + path);
    Field f(g, real_flag);
    std::size_t off = 21;
    detail::for_each_signed(g, [&](const int* k) {
        float re = detail::get_f32(p + off);
        float im = detail::get_f32(p + off + 4);
        off += 8;
        f.coeffs[g.flat(k)] = cplx(re, im);
    });
    return f;
}

}  // namespace fzk

#endif
