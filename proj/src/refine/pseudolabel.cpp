#include "segdiscover/refine/pseudolabel.hpp"

#include <string>
#include <vector>

#include "segdiscover/core/error.hpp"

namespace segdiscover::refine {

core::LabelMap assemble_pseudolabels(const core::LabelMap& primitives,
                                     const std::map<std::uint32_t, std::uint32_t>& concept_of,
                                     std::uint32_t concept_count) {
    for (const auto& [primitive, concept_id] : concept_of) {
        if (concept_id >= concept_count) {
            throw Error("assemble_pseudolabels: concept " + std::to_string(concept_id) + " of primitive " +
                        std::to_string(primitive) + " is out of range");
        }
    }
    core::LabelMap out = primitives;
    for (auto& v : out.labels) {
        const auto it = concept_of.find(v);
        if (it == concept_of.end()) {
            throw Error("assemble_pseudolabels: primitive " + std::to_string(v) + " has no concept label");
        }
        v = it->second;
    }
    return out;
}

}  // namespace segdiscover::refine
