#pragma once

#include <filesystem>

#include "segdiscover/embedding/embedding_matrix.hpp"

namespace segdiscover::embedding {

// Little-endian layout:
//   "SGDE" | u32 version=1 | u32 N | u32 D | N x [u32 image_id | u32 primitive_id | D x f32]
inline constexpr std::uint32_t kSgdeVersion = 1;
inline constexpr std::size_t kSgdeHeaderBytes = 16;

/// Writes rows sorted by key. Throws on duplicate keys or non-finite values.
void write_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

/// Throws on bad magic, version mismatch, payload length disagreeing with
/// N and D, unsorted or duplicate keys, and non-finite values.
EmbeddingMatrix read_embeddings(const std::filesystem::path& path);

}  // namespace segdiscover::embedding
