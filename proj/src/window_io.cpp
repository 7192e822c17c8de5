#include "nbl/window_io.hpp"

#include <array>
#include <istream>
#include <ostream>

namespace nbl {

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw Error("window dump truncated");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
    return v;
}

constexpr std::array<char, 4> kMagic{'N', 'B', 'L', 'W'};

}  // namespace

void write_window_dump(std::ostream& out, std::uint64_t seed, const std::string& expr,
                       const BitWindow& w) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kWindowDumpVersion);
    put_le<std::uint64_t>(out, seed);
    put_le<std::uint64_t>(out, w.start());
    put_le<std::uint64_t>(out, w.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(expr.size()));
    out.write(expr.data(), static_cast<std::streamsize>(expr.size()));
    for (auto word : w.words()) put_le<std::uint64_t>(out, word);
}

WindowDump read_window_dump(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw Error("window dump: bad magic");
    if (get_le<std::uint32_t>(in) != kWindowDumpVersion) throw Error("window dump: unsupported version");
    WindowDump d;
    d.seed = get_le<std::uint64_t>(in);
    const auto start = get_le<std::uint64_t>(in);
    const auto length = get_le<std::uint64_t>(in);
    d.expr.resize(get_le<std::uint32_t>(in));
    if (!in.read(d.expr.data(), static_cast<std::streamsize>(d.expr.size()))) throw Error("window dump truncated");
    std::vector<std::uint64_t> words((length + 63) / 64);
    for (auto& word : words) word = get_le<std::uint64_t>(in);
    d.window = BitWindow(start, length, std::move(words));
    return d;
}

}  // namespace nbl
