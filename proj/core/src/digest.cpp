#include "iceberg/digest.hpp"

#include "iceberg/errors.hpp"

#include <fstream>
#include <sstream>

namespace iceberg {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file for digest: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::uint64_t h = fnv1a64(buf.str());

    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[(h >> (4 * (15 - i))) & 0xF];
    }
    return out;
}

} // namespace iceberg
