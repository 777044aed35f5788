#include "circlefit/image_io.hpp"

#include <cctype>
#include <fstream>

#include "circlefit/errors.hpp"

namespace circlefit {

std::size_t EdgeImage::edgel_count() const {
    std::size_t n = 0;
    for (auto b : bitmap) n += b;
    return n;
}

EdgeImage EdgeImage::blank(int width, int height) {
    if (width < 1 || height < 1) throw Error("EdgeImage: dimensions must be >= 1");
    EdgeImage img;
    img.width = width;
    img.height = height;
    img.bitmap.assign(static_cast<std::size_t>(width) * height, 0);
    return img;
}

namespace {

// Reads the next whitespace/comment-delimited header token.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {  // comment runs to end of line
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int parse_dim(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw MalformedHeader(std::string("missing ") + what);
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw MalformedHeader(std::string("non-numeric ") + what + ": " + tok);
    long v = std::stol(tok);
    if (v < 1) throw MalformedHeader(std::string(what) + " must be >= 1");
    return static_cast<int>(v);
}

}  // namespace

EdgeImage load_edge_image(const std::string& path, int pgm_threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileMissing(path);

    const std::string magic = next_token(in);
    if (magic.size() != 2 || magic[0] != 'P') throw UnsupportedFormat("not a Netpbm file: " + path);
    const char kind = magic[1];
    if (kind != '1' && kind != '2' && kind != '4' && kind != '5')
        throw UnsupportedFormat("magic " + magic + " (only P1/P2/P4/P5 supported)");

    const int width = parse_dim(in, "width");
    const int height = parse_dim(in, "height");
    const bool is_pgm = kind == '2' || kind == '5';
    int maxval = 0;
    if (is_pgm) {
        maxval = parse_dim(in, "maxval");
        if (maxval > 255) throw UnsupportedFormat("16-bit PGM (maxval " + std::to_string(maxval) + ")");
    }

    EdgeImage img = EdgeImage::blank(width, height);
    if (kind == '1') {
        // digits may be packed without separators
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                int c;
                do {
                    c = in.get();
                    if (c == '#')
                        while ((c = in.get()) != EOF && c != '\n') {
                        }
                } while (c != EOF && std::isspace(c));
                if (c != '0' && c != '1') throw MalformedHeader("P1 raster expects 0/1 digits");
                img.set(x, y, c == '1');
            }
    } else if (kind == '2') {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const std::string tok = next_token(in);
                if (tok.empty()) throw MalformedHeader("P2 raster truncated");
                const long v = std::stol(tok);
                if (v < 0 || v > maxval) throw MalformedHeader("P2 sample out of range");
                img.set(x, y, v < pgm_threshold);
            }
    } else if (kind == '4') {
        // binary rows padded to whole bytes, MSB first
        const int row_bytes = (width + 7) / 8;
        std::vector<char> row(row_bytes);
        for (int y = 0; y < height; ++y) {
            if (!in.read(row.data(), row_bytes)) throw MalformedHeader("P4 raster truncated");
            for (int x = 0; x < width; ++x) {
                const int bit = (static_cast<unsigned char>(row[x / 8]) >> (7 - x % 8)) & 1;
                img.set(x, y, bit != 0);
            }
        }
    } else {  // P5
        std::vector<char> row(width);
        for (int y = 0; y < height; ++y) {
            if (!in.read(row.data(), width)) throw MalformedHeader("P5 raster truncated");
            for (int x = 0; x < width; ++x) {
                const int v = static_cast<unsigned char>(row[x]);
                if (v > maxval) throw MalformedHeader("P5 sample out of range");
                img.set(x, y, v < pgm_threshold);
            }
        }
    }
    return img;
}

std::vector<Point2D> edgels(const EdgeImage& img) {
    std::vector<Point2D> pts;
    pts.reserve(img.edgel_count());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.at(x, y)) pts.push_back(Point2D{x + 0.5, y + 0.5});
    return pts;
}

std::uint64_t triplet_count(std::uint64_t n) {
    if (n < 3) return 0;
    // n(n-1) is even, and the product of three consecutive integers is
    // divisible by 3, so each division is exact.
    const std::uint64_t half = n * (n - 1) / 2;
    return half * (n - 2) / 3;
}

}  // namespace circlefit
