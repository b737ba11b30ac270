#include "gslp/image.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace gslp {

namespace {

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return std::vector<unsigned char>((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
}

bool has_suffix_icase(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[s.size() - suffix.size() + i])) != suffix[i])
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// PGM (binary P5)

long parse_header_int(const std::vector<unsigned char>& d, std::size_t& pos) {
    while (pos < d.size()) {
        if (std::isspace(d[pos])) {
            ++pos;
        } else if (d[pos] == '#') {
            while (pos < d.size() && d[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= d.size() || !std::isdigit(d[pos])) throw std::runtime_error("malformed PGM header");
    long v = 0;
    while (pos < d.size() && std::isdigit(d[pos])) {
        v = v * 10 + (d[pos] - '0');
        if (v > (1L << 30)) throw std::runtime_error("malformed PGM header");
        ++pos;
    }
    return v;
}

Image load_pgm(const std::vector<unsigned char>& data) {
    std::size_t pos = 2;  // past "P5"
    const long width = parse_header_int(data, pos);
    const long height = parse_header_int(data, pos);
    const long maxval = parse_header_int(data, pos);
    if (width < 1 || height < 1) throw std::runtime_error("malformed PGM header");
    if (maxval < 1 || maxval > 255) throw std::runtime_error("unsupported PGM bit depth (maxval must be <= 255)");
    if (pos >= data.size() || !std::isspace(data[pos])) throw std::runtime_error("malformed PGM header");
    ++pos;  // exactly one whitespace byte before the raster
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data.size() - pos < n) throw std::runtime_error("unexpected end of data");
    Image img(static_cast<int>(width), static_cast<int>(height));
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<double>(data[pos + i]);
    return img;
}

void save_pgm(const Image& img, const std::string& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// PNG (8-bit grayscale, via libpng)

struct PngReadState {
    const unsigned char* data = nullptr;
    std::size_t size = 0;
    std::size_t offset = 0;
    std::string error;
};

extern "C" void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->offset + len > st->size) {
        st->error = "unexpected end of data";
        png_error(png, "unexpected end of data");
    }
    std::memcpy(out, st->data + st->offset, len);
    st->offset += len;
}

extern "C" void png_capture_error(png_structp png, png_const_charp msg) {
    auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
    if (st && st->error.empty()) st->error = msg;
    longjmp(png_jmpbuf(png), 1);
}

extern "C" void png_ignore_warning(png_structp, png_const_charp) {}

Image load_png(const std::vector<unsigned char>& data) {
    PngReadState st{data.data(), data.size(), 0, {}};
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &st, png_capture_error, png_ignore_warning);
    if (!png) throw std::runtime_error("failed to initialize PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("failed to initialize PNG reader");
    }

    Image img;
    std::vector<png_bytep> rows;
    std::vector<unsigned char> raster;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error(st.error.empty() ? "failed to decode PNG" : "failed to decode PNG: " + st.error);
    }

    png_set_read_fn(png, &st, png_mem_read);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8 || color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("unsupported PNG format: need 8-bit grayscale without alpha");
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    img = Image(static_cast<int>(width), static_cast<int>(height));
    raster.resize(img.size());
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + static_cast<std::size_t>(y) * width;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    for (std::size_t i = 0; i < img.size(); ++i) img.pixels[i] = static_cast<double>(raster[i]);
    return img;
}

void save_png(const Image& img, const std::string& path, const std::vector<unsigned char>& bytes) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot open file for writing: " + path);

    PngReadState st;  // reused only for the error message slot
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &st, png_capture_error, png_ignore_warning);
    if (!png) {
        std::fclose(fp);
        throw std::runtime_error("failed to initialize PNG writer");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        std::fclose(fp);
        throw std::runtime_error("failed to initialize PNG writer");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw std::runtime_error(st.error.empty() ? "failed to encode PNG" : "failed to encode PNG: " + st.error);
    }

    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * img.width));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) throw std::runtime_error("write failed: " + path);
}

}  // namespace

Image load_image(const std::string& path) {
    const auto data = read_file(path);
    if (data.size() >= 2 && data[0] == 'P' && data[1] == '5') return load_pgm(data);
    static const unsigned char png_magic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (data.size() >= 8 && std::memcmp(data.data(), png_magic, 8) == 0) return load_png(data);
    throw std::runtime_error("unsupported image format: " + path);
}

void save_image(const Image& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 || img.size() != static_cast<std::size_t>(img.width) * img.height)
        throw std::invalid_argument("save_image: malformed image");

    // round half away from zero, then clamp to [0,255]
    std::vector<unsigned char> bytes(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const long long r = std::llround(img.pixels[i]);
        bytes[i] = static_cast<unsigned char>(r < 0 ? 0 : (r > 255 ? 255 : r));
    }

    if (has_suffix_icase(path, ".pgm")) {
        save_pgm(img, path, bytes);
    } else if (has_suffix_icase(path, ".png")) {
        save_png(img, path, bytes);
    } else {
        throw std::runtime_error("unsupported output extension (use .pgm or .png): " + path);
    }
}

Image add_gaussian_noise(const Image& img, const NoiseSpec& spec) {
    if (!(spec.sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
    Image out = img;
    if (spec.sigma == 0.0) return out;

    std::mt19937_64 rng(spec.seed);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = 1.0 - static_cast<double>(rng() >> 11) * kInv53;  // (0,1]
        const double u2 = static_cast<double>(rng() >> 11) * kInv53;        // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        out.pixels[i] += spec.sigma * (r * std::cos(kTwoPi * u2));
        if (i + 1 < n) out.pixels[i + 1] += spec.sigma * (r * std::sin(kTwoPi * u2));
    }
    return out;
}

}  // namespace gslp
