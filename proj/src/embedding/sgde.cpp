#include "segdiscover/embedding/sgde.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include "segdiscover/core/error.hpp"

namespace segdiscover::embedding {

namespace {

void put_u32(std::vector<char>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

}  // namespace

void write_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    matrix.validate();
    const EmbeddingMatrix m = matrix.sorted();
    static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

    std::vector<char> buf;
    buf.reserve(kSgdeHeaderBytes + m.count() * (8 + 4 * static_cast<std::size_t>(m.dim)));
    buf.insert(buf.end(), {'S', 'G', 'D', 'E'});
    put_u32(buf, kSgdeVersion);
    put_u32(buf, static_cast<std::uint32_t>(m.count()));
    put_u32(buf, m.dim);
    for (std::size_t i = 0; i < m.count(); ++i) {
        put_u32(buf, m.keys[i].image_id);
        put_u32(buf, m.keys[i].primitive_id);
        for (float v : m.row(i)) put_u32(buf, std::bit_cast<std::uint32_t>(v));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create embedding file: " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error("failed writing embedding file: " + path.string());
}

EmbeddingMatrix read_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("embedding file not found: " + path.string());
    const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string where = " in " + path.string();

    if (buf.size() < kSgdeHeaderBytes) throw Error("truncated payload (header)" + where);
    if (std::memcmp(buf.data(), "SGDE", 4) != 0) throw Error("bad magic" + where);
    const std::uint32_t version = get_u32(buf.data() + 4);
    if (version != kSgdeVersion) throw Error("version mismatch (" + std::to_string(version) + ")" + where);

    EmbeddingMatrix m;
    const std::uint64_t n = get_u32(buf.data() + 8);
    m.dim = get_u32(buf.data() + 12);
    const std::uint64_t record = 8 + 4 * static_cast<std::uint64_t>(m.dim);
    const std::uint64_t expected = kSgdeHeaderBytes + n * record;
    if (buf.size() < expected) throw Error("truncated payload" + where);
    if (buf.size() > expected) throw Error("trailing bytes after payload" + where);

    m.keys.resize(n);
    m.values.resize(n * m.dim);
    const char* p = buf.data() + kSgdeHeaderBytes;
    for (std::uint64_t i = 0; i < n; ++i) {
        m.keys[i] = {get_u32(p), get_u32(p + 4)};
        p += 8;
        for (std::uint32_t d = 0; d < m.dim; ++d, p += 4) {
            const float v = std::bit_cast<float>(get_u32(p));
            if (!std::isfinite(v)) throw Error("non-finite value" + where);
            m.values[i * m.dim + d] = v;
        }
        if (i > 0) {
            if (m.keys[i] == m.keys[i - 1]) throw Error("duplicate keys" + where);
            if (m.keys[i] < m.keys[i - 1]) throw Error("keys not sorted" + where);
        }
    }
    return m;
}

}  // namespace segdiscover::embedding
