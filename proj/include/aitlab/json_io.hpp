#pragma once

// JSON mirrors of the result types. Bit strings are plain "0"/"1" text with
// "" for the empty string; dyadics are "p/2^q" literals; intervals carry both
// endpoints plus a double midpoint for plotting. Undefined values are null.

#include <optional>

#include <json.hpp>

#include "aitlab/appendix.hpp"
#include "aitlab/depth.hpp"
#include "aitlab/reports.hpp"
#include "aitlab/table_cache.hpp"

namespace aitlab {

using json = nlohmann::ordered_json;

template <class T>
json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    return json(*v);
}

void to_json(json& j, const BitString& b);
void to_json(json& j, const Dyadic& d);
void to_json(json& j, const RealInterval& r);
void to_json(json& j, const Budget& b);
void to_json(json& j, const MachineResult& r);
void to_json(json& j, const Ensemble& e);
void to_json(json& j, const UniformSet& s);
void to_json(json& j, const EffectiveResult& r);
void to_json(json& j, const TauResult& t);
void to_json(json& j, const TauWitness& w);
void to_json(json& j, const DepthEdgeReport& r);
void to_json(json& j, const DepthResult& r);
void to_json(json& j, const StructureResult& r);
void to_json(json& j, const KmssResult& r);
void to_json(json& j, const CensusRow& r);
void to_json(json& j, const Census& c);
void to_json(json& j, const AppendixBlock& b);
void to_json(json& j, const PartialAppendixEnsemble& p);
void to_json(json& j, const OmegaComparison& c);
void to_json(json& j, const ChainRuleRow& r);
void to_json(json& j, const KmssGapRow& r);
void to_json(json& j, const CacheListing& l);
void to_json(json& j, const VerifyReport& r);

// {"entries":[{"s":"01","num":1,"exp":2},...]}; throws std::invalid_argument.
Ensemble ensemble_from_json(const json& j);

}  // namespace aitlab
