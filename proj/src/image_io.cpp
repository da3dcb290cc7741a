#include "image_io.hpp"

#include <string>

#include "files.hpp"

namespace chaoscrypt {

namespace {

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Reads one unsigned decimal header field, skipping whitespace and comments.
    std::uint64_t field(const char* what) {
        for (;;) {
            while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
            if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
                continue;
            }
            break;
        }
        if (pos_ >= bytes_.size() || bytes_[pos_] < '0' || bytes_[pos_] > '9') {
            throw Error(ErrorCode::Format, std::string("malformed image header: missing ") + what);
        }
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_++] - '0');
            if (value > 0xFFFFFFFFull) throw Error(ErrorCode::Format, std::string("malformed image header: ") + what + " too large");
        }
        return value;
    }

    // The single whitespace byte separating the header from the raster.
    void raster_separator() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw Error(ErrorCode::Format, "malformed image header: no whitespace before pixel data");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }
    void skip(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

ImageBuffer parse_pnm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw Error(ErrorCode::Format, "bad image magic: expected binary PGM (P5) or PPM (P6)");
    }
    const std::uint8_t channels = bytes[1] == '5' ? 1 : 3;
    HeaderReader reader(bytes);
    reader.skip(2);
    if (bytes.size() > 2 && !is_space(bytes[2]) && bytes[2] != '#') {
        throw Error(ErrorCode::Format, "bad image magic: expected binary PGM (P5) or PPM (P6)");
    }
    const auto width = reader.field("width");
    const auto height = reader.field("height");
    const auto maxval = reader.field("maxval");
    if (width == 0 || height == 0) throw Error(ErrorCode::Format, "malformed image header: zero dimension");
    if (maxval != 255) {
        throw Error(ErrorCode::Format, "unsupported maxval " + std::to_string(maxval) + " (only 255 is accepted)");
    }
    reader.raster_separator();
    const std::uint64_t need = width * height * channels;
    const std::uint64_t have = bytes.size() - reader.position();
    if (have < need) {
        throw Error(ErrorCode::Format, "truncated pixel data: expected " + std::to_string(need) + " bytes, found " +
                                           std::to_string(have));
    }
    ImageBuffer image;
    image.width = static_cast<std::uint32_t>(width);
    image.height = static_cast<std::uint32_t>(height);
    image.channels = channels;
    const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(reader.position());
    image.data.assign(first, first + static_cast<std::ptrdiff_t>(need));
    return image;
}

std::vector<std::uint8_t> encode_pnm(const ImageBuffer& image) {
    validate(image);
    const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + ' ' + std::to_string(image.width) +
                               ' ' + std::to_string(image.height) + " 255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.data.begin(), image.data.end());
    return out;
}

ImageBuffer read_image(const std::filesystem::path& path) { return parse_pnm(read_file(path)); }

void write_image(const ImageBuffer& image, const std::filesystem::path& path) {
    write_file_atomic(path, encode_pnm(image));
}

ImageBuffer read_raw_image(const std::filesystem::path& path, std::uint32_t width, std::uint32_t height,
                           std::uint8_t channels) {
    require(width >= 1 && height >= 1, "raw image dimensions must be at least 1x1");
    require(channels == 1 || channels == 3, "raw image channels must be 1 or 3");
    ImageBuffer image{width, height, channels, read_file(path)};
    if (image.data.size() != image.byte_count()) {
        throw Error(ErrorCode::Format, "raw image holds " + std::to_string(image.data.size()) +
                                           " bytes but " + std::to_string(image.byte_count()) + " were declared");
    }
    return image;
}

}  // namespace chaoscrypt
