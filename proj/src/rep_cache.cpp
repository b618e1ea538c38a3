#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "triadne/lattice.hpp"

namespace triadne {

namespace {

constexpr char magic[4] = {'T', 'R', 'I', 'A'};
constexpr u32 version = 1;

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(u64(v) >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), sizeof b);
}

template <class T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof b)) throw resource_error("rep cache: truncated file");
    u64 v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) v |= u64(b[i]) << (8 * i);
    return static_cast<T>(v);
}

}  // namespace

void write_rep_cache(const std::string& path, const RepList& reps) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw resource_error("rep cache: cannot write " + tmp);
        os.write(magic, 4);
        put_le<u32>(os, version);
        put_le<u64>(os, u64(reps.lambda));
        put_le<u32>(os, u32(reps.d));
        put_le<u64>(os, u64(reps.size()));
        for (i64 c : reps.coords) put_le<i64>(os, c);
        if (!os) throw resource_error("rep cache: write failed");
    }
    std::filesystem::rename(tmp, path);
}

RepList read_rep_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw resource_error("rep cache: cannot open " + path);
    char m[4];
    if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0) throw resource_error("rep cache: bad magic");
    if (get_le<u32>(is) != version) throw resource_error("rep cache: unsupported version");
    RepList r;
    r.lambda = i64(get_le<u64>(is));
    r.d = int(get_le<u32>(is));
    u64 count = get_le<u64>(is);
    r.coords.resize(size_t(count) * size_t(r.d));
    for (auto& c : r.coords) c = get_le<i64>(is);
    return r;
}

RepList cached_reps(i64 lambda, int d) {
    const char* dir = std::getenv("TRIADNE_CACHE_DIR");
    if (!dir || !*dir) return sum_of_squares_reps(lambda, d);
    std::filesystem::path p =
        std::filesystem::path(dir) / ("reps_d" + std::to_string(d) + "_l" + std::to_string(lambda) + ".bin");
    if (std::filesystem::exists(p)) {
        try {
            RepList r = read_rep_cache(p.string());
            if (r.lambda == lambda && r.d == d) return r;
        } catch (const resource_error&) {
            // fall through and rebuild
        }
    }
    RepList r = sum_of_squares_reps(lambda, d);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    try {
        write_rep_cache(p.string(), r);
    } catch (const std::exception&) {
        // an unwritable cache directory only costs recomputation
    }
    return r;
}

}  // namespace triadne
