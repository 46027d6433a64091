#include "geofill/io_formats.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace geofill {

namespace {

constexpr long kMaxDim = 100000;          // per-axis sanity bound
constexpr long long kMaxPixels = 1 << 26;  // ~67M, refuses absurd allocations

const bool kHostLittle = (std::endian::native == std::endian::little);

std::string load_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError(path + ": read failed");
    return std::move(ss).str();
}

void store_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(path + ": cannot open for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f.good()) throw IoError(path + ": write failed");
}

std::uint32_t bswap32(std::uint32_t u) {
    return (u >> 24) | ((u >> 8) & 0xff00u) | ((u << 8) & 0xff0000u) | (u << 24);
}

float read_f32(const char* p, bool swap) {
    std::uint32_t u;
    std::memcpy(&u, p, 4);
    if (swap) u = bswap32(u);
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

std::int32_t read_i32(const char* p, bool swap) {
    std::uint32_t u;
    std::memcpy(&u, p, 4);
    if (swap) u = bswap32(u);
    std::int32_t v;
    std::memcpy(&v, &u, 4);
    return v;
}

void append_f32(std::string& out, float f, bool swap) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    if (swap) u = bswap32(u);
    out.append(reinterpret_cast<const char*>(&u), 4);
}

void append_i32(std::string& out, std::int32_t v, bool swap) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    if (swap) u = bswap32(u);
    out.append(reinterpret_cast<const char*>(&u), 4);
}

bool pnm_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v';
}

// Token scanner for PGM/PPM/PFM headers; every error carries the byte offset.
struct HeaderCursor {
    const std::string& buf;
    const std::string& path;
    std::size_t pos = 0;
    bool comments = false;  // PNM allows '#' comments, PFM does not

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        throw IoError(path + ": byte " + std::to_string(at) + ": " + msg);
    }

    void skip_separators() {
        while (pos < buf.size()) {
            if (pnm_space(buf[pos])) {
                ++pos;
            } else if (comments && buf[pos] == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::string token(const char* what) {
        skip_separators();
        if (pos >= buf.size()) fail(pos, std::string("missing ") + what);
        std::size_t start = pos;
        while (pos < buf.size() && !pnm_space(buf[pos]) && !(comments && buf[pos] == '#'))
            ++pos;
        return buf.substr(start, pos - start);
    }

    long int_token(const char* what) {
        std::size_t at = pos;
        std::string t = token(what);
        at = pos - t.size();
        char* end = nullptr;
        long v = std::strtol(t.c_str(), &end, 10);
        if (end != t.c_str() + t.size() || t.empty())
            fail(at, std::string(what) + " is not an integer: '" + t + "'");
        return v;
    }

    double real_token(const char* what) {
        std::size_t at = pos;
        std::string t = token(what);
        at = pos - t.size();
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || t.empty())
            fail(at, std::string(what) + " is not a number: '" + t + "'");
        return v;
    }

    // header and payload are divided by exactly one whitespace byte
    void one_separator(const char* what) {
        if (pos >= buf.size() || !pnm_space(buf[pos]))
            fail(pos, std::string("expected a whitespace byte before ") + what);
        ++pos;
    }
};

void check_dims(const HeaderCursor& cur, long w, long h, std::size_t at) {
    if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim ||
        static_cast<long long>(w) * h > kMaxPixels)
        cur.fail(at, "unreasonable image dimensions " + std::to_string(w) + "x" +
                         std::to_string(h));
}

void check_payload(const HeaderCursor& cur, std::size_t need) {
    std::size_t have = cur.buf.size() - cur.pos;
    if (have < need)
        cur.fail(cur.pos, "truncated payload: need " + std::to_string(need) +
                              " bytes, have " + std::to_string(have));
    if (have > need)
        cur.fail(cur.pos + need, "trailing bytes after payload");
}

}  // namespace

ImageGrid read_image(const std::string& path) {
    std::string buf = load_file(path);
    HeaderCursor cur{buf, path, 0, /*comments=*/true};

    std::string magic = cur.token("PNM magic");
    int channels = 0;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else cur.fail(0, "expected binary PGM/PPM magic P5 or P6, got '" + magic + "'");

    std::size_t dim_at = cur.pos;
    long w = cur.int_token("width");
    long h = cur.int_token("height");
    check_dims(cur, w, h, dim_at);
    long maxval = cur.int_token("maxval");
    if (maxval != 255)
        cur.fail(cur.pos, "only 8-bit images (maxval 255) are supported, got " +
                              std::to_string(maxval));
    cur.one_separator("pixel data");

    check_payload(cur, static_cast<std::size_t>(w) * h * channels);
    ImageGrid img(static_cast<int>(w), static_cast<int>(h), channels);
    img.value_scale = 255.0;
    for (std::size_t i = 0; i < img.data.size(); ++i)
        img.data[i] = static_cast<double>(static_cast<unsigned char>(buf[cur.pos + i]));
    return img;
}

void write_image(const std::string& path, const ImageGrid& image) {
    const char* magic = nullptr;
    if (image.channels == 1) magic = "P5";
    else if (image.channels == 3) magic = "P6";
    else throw DomainError("write_image expects a 1- or 3-channel image");

    std::string out = std::string(magic) + "\n" + std::to_string(image.width) + " " +
                      std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.data.size());
    for (double v : image.data) {
        if (!std::isfinite(v))
            throw DomainError("write_image: image contains non-finite values");
        double r = std::round(v);
        if (r < 0.0) r = 0.0;
        if (r > 255.0) r = 255.0;
        out.push_back(static_cast<char>(static_cast<unsigned char>(r)));
    }
    store_file(path, out);
}

ImageGrid read_pfm(const std::string& path) {
    std::string buf = load_file(path);
    HeaderCursor cur{buf, path, 0, /*comments=*/false};

    std::string magic = cur.token("PFM magic");
    if (magic == "PF")
        cur.fail(0, "color PFM is not supported (expected grayscale 'Pf')");
    if (magic != "Pf")
        cur.fail(0, "expected PFM magic 'Pf', got '" + magic + "'");

    std::size_t dim_at = cur.pos;
    long w = cur.int_token("width");
    long h = cur.int_token("height");
    check_dims(cur, w, h, dim_at);
    std::size_t scale_at = cur.pos;
    double scale = cur.real_token("scale");
    if (scale == 0.0 || !std::isfinite(scale))
        cur.fail(scale_at, "scale must be a nonzero real");
    cur.one_separator("float data");

    check_payload(cur, static_cast<std::size_t>(w) * h * 4);
    const bool file_little = scale < 0.0;
    const bool swap = (file_little != kHostLittle);

    ImageGrid img(static_cast<int>(w), static_cast<int>(h), 1);
    img.value_scale = 0.0;
    const char* p = buf.data() + cur.pos;
    for (long fy = 0; fy < h; ++fy) {       // rows are stored bottom-up
        long y = h - 1 - fy;
        for (long x = 0; x < w; ++x, p += 4)
            img.at(static_cast<int>(x), static_cast<int>(y)) =
                static_cast<double>(read_f32(p, swap));  // non-finite passes through
    }
    return img;
}

void write_pfm(const std::string& path, const ImageGrid& image) {
    if (image.channels != 1)
        throw DomainError("write_pfm expects a single-channel field");

    std::string out = "Pf\n" + std::to_string(image.width) + " " +
                      std::to_string(image.height) + "\n" +
                      (kHostLittle ? "-1.0" : "1.0") + "\n";
    out.reserve(out.size() + image.data.size() * 4);
    for (int fy = 0; fy < image.height; ++fy) {
        int y = image.height - 1 - fy;
        for (int x = 0; x < image.width; ++x)
            append_f32(out, static_cast<float>(image.at(x, y)), /*swap=*/false);
    }
    store_file(path, out);
}

ImageGrid read_flo(const std::string& path) {
    std::string buf = load_file(path);
    if (buf.size() < 12)
        throw IoError(path + ": byte 0: truncated header (need 12 bytes, have " +
                      std::to_string(buf.size()) + ")");

    const bool swap = !kHostLittle;  // the container is little-endian
    float magic = read_f32(buf.data(), swap);
    if (magic != 202021.25f)
        throw IoError(path + ": byte 0: bad magic, not a flow file");

    long w = read_i32(buf.data() + 4, swap);
    long h = read_i32(buf.data() + 8, swap);
    if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim ||
        static_cast<long long>(w) * h > kMaxPixels)
        throw IoError(path + ": byte 4: unreasonable flow dimensions " +
                      std::to_string(w) + "x" + std::to_string(h));

    std::size_t need = static_cast<std::size_t>(w) * h * 2 * 4;
    std::size_t have = buf.size() - 12;
    if (have < need)
        throw IoError(path + ": byte 12: truncated payload: need " + std::to_string(need) +
                      " bytes, have " + std::to_string(have));
    if (have > need)
        throw IoError(path + ": byte " + std::to_string(12 + need) +
                      ": trailing bytes after payload");

    ImageGrid img(static_cast<int>(w), static_cast<int>(h), 2);
    img.value_scale = 0.0;
    const char* p = buf.data() + 12;
    for (long y = 0; y < h; ++y)
        for (long x = 0; x < w; ++x) {
            double u = static_cast<double>(read_f32(p, swap));
            double v = static_cast<double>(read_f32(p + 4, swap));
            p += 8;
            if (!std::isfinite(u) || !std::isfinite(v))
                throw IoError(path + ": non-finite flow value at pixel (" +
                              std::to_string(x) + "," + std::to_string(y) + ")");
            img.at(static_cast<int>(x), static_cast<int>(y), 0) = u;
            img.at(static_cast<int>(x), static_cast<int>(y), 1) = v;
        }
    return img;
}

void write_flo(const std::string& path, const ImageGrid& flow) {
    if (flow.channels != 2)
        throw DomainError("write_flo expects a 2-channel flow field");
    for (double v : flow.data)
        if (!std::isfinite(v))
            throw DomainError("write_flo: flow contains non-finite values");

    const bool swap = !kHostLittle;
    std::string out;
    out.reserve(12 + flow.data.size() * 4);
    append_f32(out, 202021.25f, swap);
    append_i32(out, flow.width, swap);
    append_i32(out, flow.height, swap);
    for (int y = 0; y < flow.height; ++y)
        for (int x = 0; x < flow.width; ++x) {
            append_f32(out, static_cast<float>(flow.at(x, y, 0)), swap);
            append_f32(out, static_cast<float>(flow.at(x, y, 1)), swap);
        }
    store_file(path, out);
}

SparseField read_sparse(const std::string& path) {
    std::string buf = load_file(path);
    std::istringstream in(buf);
    std::string line;
    long lineno = 0;

    auto fail = [&](const std::string& msg) -> void {
        throw IoError(path + ": line " + std::to_string(lineno) + ": " + msg);
    };
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line()) fail("missing 'GEOSPARSE <width> <height> <channels>' header");
    std::istringstream hdr(line);
    std::string tag;
    long w = 0, h = 0, c = 0;
    std::string extra;
    if (!(hdr >> tag) || tag != "GEOSPARSE")
        fail("expected 'GEOSPARSE <width> <height> <channels>' header");
    if (!(hdr >> w >> h >> c)) fail("header dimensions must be three integers");
    if (hdr >> extra) fail("trailing tokens after header");
    if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim ||
        static_cast<long long>(w) * h > kMaxPixels)
        fail("unreasonable dimensions " + std::to_string(w) + "x" + std::to_string(h));
    if (c < 1 || c > 64) fail("channel count must be in [1,64], got " + std::to_string(c));

    SparseField out;
    out.values = ImageGrid(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c), 0.0);
    out.confidence = ImageGrid(static_cast<int>(w), static_cast<int>(h), 1, 0.0);

    long long prev_rank = -1;
    std::size_t records = 0;
    while (next_line()) {
        if (line.empty()) fail("empty record line");
        std::istringstream rec(line);
        long long x = 0, y = 0;
        if (!(rec >> x >> y)) fail("expected 'x y v1 ...' record");
        if (x < 0 || x >= w || y < 0 || y >= h)
            fail("site (" + std::to_string(x) + "," + std::to_string(y) + ") out of bounds");
        long long rank = y * w + x;
        if (rank <= prev_rank) fail("records must be unique and raster-sorted");
        prev_rank = rank;
        for (long i = 0; i < c; ++i) {
            double v = 0.0;
            if (!(rec >> v))
                fail("expected " + std::to_string(c) + " values, found " + std::to_string(i));
            if (!std::isfinite(v)) fail("non-finite value");
            out.values.at(static_cast<int>(x), static_cast<int>(y), static_cast<int>(i)) = v;
        }
        if (rec >> extra) fail("trailing tokens after record");
        out.confidence.at(static_cast<int>(x), static_cast<int>(y)) = 1.0;
        ++records;
    }
    if (records == 0) fail("no sample records (need at least one)");
    return out;
}

void write_sparse(const std::string& path, const SparseField& sparse) {
    validate_sparse_field(sparse);
    std::vector<SparseSite> sites = sparse.sites();
    if (sites.empty())
        throw DomainError("refusing to write a sparse file with no samples");

    std::string out = "GEOSPARSE " + std::to_string(sparse.width()) + " " +
                      std::to_string(sparse.height()) + " " +
                      std::to_string(sparse.channels()) + "\n";
    char num[64];
    for (const SparseSite& s : sites) {
        out += std::to_string(s.x) + " " + std::to_string(s.y);
        for (double v : s.values) {
            if (!std::isfinite(v))
                throw DomainError("write_sparse: sample values must be finite");
            std::snprintf(num, sizeof num, "%.17g", v);
            out += " ";
            out += num;
        }
        out += "\n";
    }
    store_file(path, out);
}

}  // namespace geofill
