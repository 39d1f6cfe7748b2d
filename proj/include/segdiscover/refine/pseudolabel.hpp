#pragma once

#include <cstdint>
#include <map>

#include "segdiscover/core/image.hpp"

namespace segdiscover::refine {

/// Broadcast each primitive's concept to its pixels. Throws when a primitive
/// present in `primitives` has no concept, or a concept is >= `concept_count`.
core::LabelMap assemble_pseudolabels(const core::LabelMap& primitives,
                                     const std::map<std::uint32_t, std::uint32_t>& concept_of,
                                     std::uint32_t concept_count);

}  // namespace segdiscover::refine
