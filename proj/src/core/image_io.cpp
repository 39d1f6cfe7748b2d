#include "segdiscover/core/image_io.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "segdiscover/core/error.hpp"

namespace segdiscover::core {

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f) {
        throw Error(std::string(mode[0] == 'r' ? "cannot open file: " : "cannot create file: ") +
                    path.string());
    }
    return f;
}

struct PngErrorState {
    std::jmp_buf jump;
    char message[256] = {0};
};

void png_error_handler(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
    std::snprintf(state->message, sizeof(state->message), "%s", msg);
    std::longjmp(state->jump, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

struct RawPng {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    std::vector<std::uint8_t> bytes;  // rows packed, big-endian samples
    std::size_t row_bytes = 0;
};

// Decodes without any transformation so bit depth and color type are reported
// exactly as stored. Heap-held state keeps setjmp/longjmp away from locals that
// change after setjmp.
void read_png_raw(std::FILE* fp, const std::filesystem::path& path, RawPng& out) {
    auto err = std::make_unique<PngErrorState>();
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, err.get(), png_error_handler,
                                             png_warning_handler);
    if (!png) throw Error("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("png: out of memory");
    }
    auto rows = std::make_unique<std::vector<png_bytep>>();

    if (setjmp(err->jump)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("png decode failed for " + path.string() + ": " + err->message);
    }

    png_init_io(png, fp);
    png_read_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    out.color_type = png_get_color_type(png, info);
    if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
        png_set_interlace_handling(png);
        png_read_update_info(png, info);
    }
    out.row_bytes = png_get_rowbytes(png, info);
    out.bytes.resize(out.row_bytes * out.height);
    rows->resize(out.height);
    for (png_uint_32 r = 0; r < out.height; ++r) (*rows)[r] = out.bytes.data() + r * out.row_bytes;
    png_read_image(png, rows->data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
}

void write_png_raw(const std::filesystem::path& path, int width, int height, int bit_depth,
                   int color_type, const std::vector<std::uint8_t>& bytes, std::size_t row_bytes) {
    FilePtr f = open_file(path, "wb");
    auto err = std::make_unique<PngErrorState>();
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, err.get(), png_error_handler,
                                              png_warning_handler);
    if (!png) throw Error("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("png: out of memory");
    }
    auto rows = std::make_unique<std::vector<png_bytep>>(height);
    for (int r = 0; r < height; ++r) {
        (*rows)[r] = const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(r) * row_bytes);
    }

    if (setjmp(err->jump)) {
        png_destroy_write_struct(&png, &info);
        throw Error("png encode failed for " + path.string() + ": " + err->message);
    }

    png_init_io(png, f.get());
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    png_write_image(png, rows->data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

bool has_png_signature(std::FILE* fp) {
    std::array<unsigned char, 8> sig{};
    const std::size_t n = std::fread(sig.data(), 1, sig.size(), fp);
    std::rewind(fp);
    return n == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0;
}

// Reads one whitespace-delimited PPM header token, skipping '#' comments.
std::string ppm_token(std::istream& in) {
    std::string tok;
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            if (!tok.empty()) break;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(ch);
    }
    return tok;
}

Image load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path.string());
    if (ppm_token(in) != "P6") throw Error("unsupported PPM variant (expected P6): " + path.string());
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(ppm_token(in));
        h = std::stoi(ppm_token(in));
        maxval = std::stoi(ppm_token(in));
    } catch (const std::exception&) {
        throw Error("malformed PPM header: " + path.string());
    }
    if (maxval != 255) throw Error("unsupported bit depth (PPM maxval " + std::to_string(maxval) +
                                   "): " + path.string());
    if (w < 1 || h < 1) throw Error("malformed PPM dimensions: " + path.string());
    Image img(h, w);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size())) {
        throw Error("truncated PPM payload: " + path.string());
    }
    return img;
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    if (!has_png_signature(f.get())) {
        f.reset();
        return load_ppm(path);
    }
    RawPng raw;
    read_png_raw(f.get(), path, raw);
    if (raw.bit_depth != 8) {
        throw Error("unsupported bit depth " + std::to_string(raw.bit_depth) + ": " + path.string());
    }
    if (raw.color_type != PNG_COLOR_TYPE_RGB) {
        throw Error("unsupported color type (expected 8-bit RGB): " + path.string());
    }
    Image img(static_cast<int>(raw.height), static_cast<int>(raw.width));
    const std::size_t row = static_cast<std::size_t>(img.width) * 3;
    for (int r = 0; r < img.height; ++r) {
        std::memcpy(img.data.data() + r * row, raw.bytes.data() + r * raw.row_bytes, row);
    }
    return img;
}

void save_image(const std::filesystem::path& path, const Image& img) {
    write_png_raw(path, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, img.data,
                  static_cast<std::size_t>(img.width) * 3);
}

void save_ppm(const std::filesystem::path& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot create file: " + path.string());
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
}

LabelMap load_label_map(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    if (!has_png_signature(f.get())) throw Error("label map is not a PNG: " + path.string());
    RawPng raw;
    read_png_raw(f.get(), path, raw);
    if (raw.color_type != PNG_COLOR_TYPE_GRAY) {
        throw Error("unsupported color type for label map (expected grayscale): " + path.string());
    }
    if (raw.bit_depth != 16 && raw.bit_depth != 8) {
        throw Error("unsupported bit depth " + std::to_string(raw.bit_depth) +
                    " for label map: " + path.string());
    }
    LabelMap map(static_cast<int>(raw.height), static_cast<int>(raw.width));
    for (int r = 0; r < map.height; ++r) {
        const std::uint8_t* row = raw.bytes.data() + r * raw.row_bytes;
        for (int c = 0; c < map.width; ++c) {
            map.at(r, c) = raw.bit_depth == 16
                               ? (static_cast<std::uint32_t>(row[2 * c]) << 8) | row[2 * c + 1]
                               : row[c];
        }
    }
    return map;
}

void save_label_map(const std::filesystem::path& path, const LabelMap& map) {
    const std::size_t row_bytes = static_cast<std::size_t>(map.width) * 2;
    std::vector<std::uint8_t> bytes(row_bytes * map.height);
    for (std::size_t i = 0; i < map.labels.size(); ++i) {
        const std::uint32_t v = map.labels[i];
        if (v > LabelMap::kIgnore) {
            throw Error("label " + std::to_string(v) + " does not fit a 16-bit label map: " + path.string());
        }
        bytes[2 * i] = static_cast<std::uint8_t>(v >> 8);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(v & 0xff);
    }
    write_png_raw(path, map.width, map.height, 16, PNG_COLOR_TYPE_GRAY, bytes, row_bytes);
}

}  // namespace segdiscover::core
