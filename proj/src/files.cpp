#include "files.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace chaoscrypt {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::Io, "error while reading '" + path.string() + "'");
    return bytes;
}

std::string read_text_file(const fs::path& path) {
    const auto bytes = read_file(path);
    return {bytes.begin(), bytes.end()};
}

namespace {

fs::path temporary_for(const fs::path& path) {
    static std::atomic<unsigned> counter{0};
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    return tmp;
}

void write_raw(const fs::path& path, const char* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out.write(data, static_cast<std::streamsize>(size));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "error while writing '" + path.string() + "'");
}

void rename_into_place(const fs::path& tmp, const fs::path& path) {
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
    const fs::path tmp = temporary_for(path);
    try {
        write_raw(tmp, reinterpret_cast<const char*>(bytes.data()), bytes.size());
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
    rename_into_place(tmp, path);
}

void write_file_atomic(const fs::path& path, std::string_view text) {
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_files_atomic(std::span<const std::pair<fs::path, std::string>> files) {
    std::vector<fs::path> temps;
    try {
        for (const auto& [path, contents] : files) {
            temps.push_back(temporary_for(path));
            write_raw(temps.back(), contents.data(), contents.size());
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& tmp : temps) fs::remove(tmp, ec);
        throw;
    }
    for (std::size_t i = 0; i < files.size(); ++i) rename_into_place(temps[i], files[i].first);
}

fs::path sidecar_path(const fs::path& bit_file) {
    fs::path meta = bit_file;
    meta += ".meta";
    return meta;
}

std::string format_meta(const BitFileMeta& meta) {
    std::ostringstream out;
    out << "kind=" << meta.kind << '\n' << "bits=" << meta.bits << '\n' << "transient=" << meta.transient << '\n';
    return out.str();
}

BitFileMeta parse_meta(std::string_view text) {
    BitFileMeta meta;
    bool have_bits = false;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorCode::Parse, "bit file metadata: malformed line");
        const auto key = line.substr(0, eq);
        const auto value = line.substr(eq + 1);
        auto integer = [&](std::uint64_t& out) {
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
            if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
                throw Error(ErrorCode::Parse, "bit file metadata: '" + std::string(key) + "' is not an integer");
            }
        };
        if (key == "kind") meta.kind = std::string(value);
        else if (key == "bits") integer(meta.bits), have_bits = true;
        else if (key == "transient") integer(meta.transient);
    }
    if (!have_bits) throw Error(ErrorCode::Parse, "bit file metadata: missing 'bits'");
    return meta;
}

void save_bit_file(const fs::path& path, const BitSequence& bits, const BitFileMeta& meta) {
    BitFileMeta stored = meta;
    stored.bits = bits.size();
    const std::pair<fs::path, std::string> files[] = {
        {path, std::string(bits.bytes().begin(), bits.bytes().end())},
        {sidecar_path(path), format_meta(stored)},
    };
    write_files_atomic(files);
}

BitSequence load_bit_file(const fs::path& path, BitFileMeta* meta) {
    auto bytes = read_file(path);
    BitFileMeta info;
    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        info = parse_meta(read_text_file(side));
        if ((info.bits + 7) / 8 != bytes.size()) {
            throw Error(ErrorCode::Format, "bit file '" + path.string() + "' holds " + std::to_string(bytes.size()) +
                                               " bytes but its metadata declares " + std::to_string(info.bits) +
                                               " bits");
        }
    } else {
        info.bits = 8ull * bytes.size();
    }
    if (meta) *meta = info;
    return BitSequence::from_packed(std::move(bytes), info.bits);
}

}  // namespace chaoscrypt
