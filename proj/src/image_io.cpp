#include "sscope/image_io.hpp"

#include "sscope/errors.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace sscope {

namespace {

bool has_suffix(const std::string& path, const std::string& suffix) {
    if (path.size() < suffix.size()) return false;
    std::string tail = path.substr(path.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return tail == suffix;
}

struct File {
    std::FILE* fp = nullptr;
    File(const std::string& path, const char* mode) : fp(std::fopen(path.c_str(), mode)) {}
    ~File() {
        if (fp) std::fclose(fp);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

// ---- PGM ----

int pgm_next_value(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments between header tokens.
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw IoError(path + ": truncated PGM header");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value)) throw IoError(path + ": malformed PGM header");
    return value;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
        throw IoError(path + ": not a P2/P5 PGM file");
    const bool binary = magic[1] == '5';

    const int width = pgm_next_value(in, path);
    const int height = pgm_next_value(in, path);
    const int maxval = pgm_next_value(in, path);
    if (width <= 0 || height <= 0) throw IoError(path + ": invalid PGM dimensions");
    if (maxval <= 0 || maxval > 65535)
        throw IoError(path + ": unsupported PGM maxval " + std::to_string(maxval));

    GrayImage image(width, height);
    const double scale = 1.0 / maxval;

    if (binary) {
        in.get();  // single whitespace after maxval
        const bool two_bytes = maxval > 255;
        std::vector<unsigned char> row(static_cast<size_t>(width) * (two_bytes ? 2 : 1));
        for (int y = 0; y < height; ++y) {
            in.read(reinterpret_cast<char*>(row.data()),
                    static_cast<std::streamsize>(row.size()));
            if (!in) throw IoError(path + ": truncated PGM pixel data");
            for (int x = 0; x < width; ++x) {
                const int v = two_bytes ? (row[2 * x] << 8 | row[2 * x + 1]) : row[x];
                image(x, y) = v * scale;
            }
        }
    } else {
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                int v = 0;
                if (!(in >> v)) throw IoError(path + ": truncated PGM pixel data");
                image(x, y) = v * scale;
            }
        }
    }
    return image;
}

void save_pgm16(const Grid<std::uint16_t>& pixels, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "P5\n" << pixels.width() << " " << pixels.height() << "\n65535\n";
    std::vector<unsigned char> row(static_cast<size_t>(pixels.width()) * 2);
    for (int y = 0; y < pixels.height(); ++y) {
        for (int x = 0; x < pixels.width(); ++x) {
            row[2 * x] = static_cast<unsigned char>(pixels(x, y) >> 8);
            row[2 * x + 1] = static_cast<unsigned char>(pixels(x, y) & 0xff);
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError(path + ": write failed");
}

void save_pgm8(const MaskGrid& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "P5\n" << mask.width() << " " << mask.height() << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(mask.width()));
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) row[x] = mask(x, y) ? 255 : 0;
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError(path + ": write failed");
}

// ---- PNG ----

const char* color_type_name(int color_type) {
    switch (color_type) {
        case PNG_COLOR_TYPE_RGB: return "rgb";
        case PNG_COLOR_TYPE_RGB_ALPHA: return "rgba";
        case PNG_COLOR_TYPE_PALETTE: return "palette";
        case PNG_COLOR_TYPE_GRAY_ALPHA: return "gray+alpha";
        default: return "unknown";
    }
}

GrayImage load_png(const std::string& path) {
    File file(path, "rb");
    if (!file.fp) throw IoError(path + ": cannot open file");

    unsigned char signature[8];
    if (std::fread(signature, 1, 8, file.fp) != 8 || png_sig_cmp(signature, 0, 8))
        throw IoError(path + ": not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": libpng initialization failed");
    }

    std::vector<unsigned char> data;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": PNG decode failed");
    }

    png_init_io(png, file.fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));

    if (color_type != PNG_COLOR_TYPE_GRAY) {
        const std::string name = color_type_name(color_type);
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": unsupported PNG color mode '" + name +
                      "' (grayscale required)");
    }
    if (bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        bit_depth = 8;
    }
    png_read_update_info(png, info);

    const size_t row_bytes = png_get_rowbytes(png, info);
    data.resize(row_bytes * height);
    rows.resize(height);
    for (int y = 0; y < height; ++y) rows[y] = data.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage image(width, height);
    if (bit_depth == 16) {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const unsigned v =
                    data[row_bytes * y + 2 * x] << 8 | data[row_bytes * y + 2 * x + 1];
                image(x, y) = v / 65535.0;
            }
    } else {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) image(x, y) = data[row_bytes * y + x] / 255.0;
    }
    return image;
}

void save_png_gray(const unsigned char* bytes, int width, int height, int bit_depth,
                   const std::string& path) {
    File file(path, "wb");
    if (!file.fp) throw IoError(path + ": cannot open file for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": libpng initialization failed");
    }

    const size_t row_bytes = static_cast<size_t>(width) * (bit_depth / 8);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(bytes + row_bytes * y);

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG encode failed");
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, width, height, bit_depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_png16(const Grid<std::uint16_t>& pixels, const std::string& path) {
    std::vector<unsigned char> data(static_cast<size_t>(pixels.width()) * pixels.height() * 2);
    const size_t row_bytes = static_cast<size_t>(pixels.width()) * 2;
    for (int y = 0; y < pixels.height(); ++y)
        for (int x = 0; x < pixels.width(); ++x) {
            data[row_bytes * y + 2 * x] = static_cast<unsigned char>(pixels(x, y) >> 8);
            data[row_bytes * y + 2 * x + 1] = static_cast<unsigned char>(pixels(x, y) & 0xff);
        }
    save_png_gray(data.data(), pixels.width(), pixels.height(), 16, path);
}

void save_png8(const MaskGrid& mask, const std::string& path) {
    std::vector<unsigned char> data(static_cast<size_t>(mask.width()) * mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            data[static_cast<size_t>(y) * mask.width() + x] = mask(x, y) ? 255 : 0;
    save_png_gray(data.data(), mask.width(), mask.height(), 8, path);
}

Grid<std::uint16_t> quantize(const GrayImage& field, double lo, double hi) {
    Grid<std::uint16_t> out(field.width(), field.height(), 0);
    const double range = hi - lo;
    if (!(range > 0.0)) return out;  // degenerate min==max: all zeros
    for (int y = 0; y < field.height(); ++y) {
        for (int x = 0; x < field.width(); ++x) {
            const double t = std::clamp((field(x, y) - lo) / range, 0.0, 1.0);
            out(x, y) = static_cast<std::uint16_t>(std::lround(t * 65535.0));
        }
    }
    return out;
}

void save_gray16(const Grid<std::uint16_t>& pixels, const std::string& path) {
    if (has_suffix(path, ".png"))
        save_png16(pixels, path);
    else
        save_pgm16(pixels, path);
}

} // namespace

GrayImage load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(path + ": cannot open file");
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();

    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return load_pgm(path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return load_png(path);
    throw IoError(path + ": unsupported image format (expected PGM P2/P5 or grayscale PNG)");
}

MaskGrid load_mask(const std::string& path) {
    const GrayImage image = load_image(path);
    MaskGrid mask(image.width(), image.height(), 0);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) mask(x, y) = image(x, y) > 0.5 ? 1 : 0;
    return mask;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void save_field(const GrayImage& field, const std::string& path, SaveMode mode) {
    for (double v : field.values())
        if (!std::isfinite(v)) throw IoError(path + ": field contains non-finite values");

    if (mode == SaveMode::normalized_image) {
        const auto [mn, mx] = std::minmax_element(field.values().begin(), field.values().end());
        save_gray16(quantize(field, *mn, *mx), path);
        return;
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "x,y,value\n";
    for (int y = 0; y < field.height(); ++y)
        for (int x = 0; x < field.width(); ++x)
            out << x << ',' << y << ',' << format_double(field(x, y)) << '\n';
    if (!out) throw IoError(path + ": write failed");
}

void save_fixed_range_image(const GrayImage& field, double lo, double hi,
                            const std::string& path) {
    save_gray16(quantize(field, lo, hi), path);
}

void save_mask(const MaskGrid& mask, const std::string& path) {
    if (has_suffix(path, ".png"))
        save_png8(mask, path);
    else
        save_pgm8(mask, path);
}

void save_vector_field_csv(const ResponseVectorField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "x,y";
    for (int i = 1; i <= field.p; ++i) out << ",v" << i;
    out << '\n';
    for (int y = 0; y < field.height; ++y) {
        for (int x = 0; x < field.width; ++x) {
            out << x << ',' << y;
            const double* v = field.at(x, y);
            for (int i = 0; i < field.p; ++i) out << ',' << format_double(v[i]);
            out << '\n';
        }
    }
    if (!out) throw IoError(path + ": write failed");
}

GrayImage load_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty CSV");

    struct Row {
        int x, y;
        double value;
    };
    std::vector<Row> rows;
    int max_x = -1;
    int max_y = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Row row{};
        const char* p = line.c_str();
        const char* end = p + line.size();
        auto r1 = std::from_chars(p, end, row.x);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',')
            throw IoError(path + ": malformed CSV row");
        auto r2 = std::from_chars(r1.ptr + 1, end, row.y);
        if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',')
            throw IoError(path + ": malformed CSV row");
        auto r3 = std::from_chars(r2.ptr + 1, end, row.value);
        if (r3.ec != std::errc{}) throw IoError(path + ": malformed CSV row");
        rows.push_back(row);
        max_x = std::max(max_x, row.x);
        max_y = std::max(max_y, row.y);
    }
    if (rows.empty()) throw IoError(path + ": CSV has no data rows");
    GrayImage image(max_x + 1, max_y + 1);
    for (const Row& r : rows) image(r.x, r.y) = r.value;
    return image;
}

} // namespace sscope
