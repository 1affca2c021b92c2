#pragma once

// JSON builders shared by the document serializers and the CLI.

#include "compdof/converse.hpp"
#include "compdof/search_oracle.hpp"
#include "compdof/zf_precoder.hpp"
#include "json_util.hpp"

namespace compdof::detail {

Json plan_json(const SchemePlan& plan);
Json beams_json(const SchemePlan& plan, const BeamDesign& design);
Json report_json(const VerificationReport& report);
Json certificate_json(const Certificate& cert);
Json search_json(const SearchResult& result);

}  // namespace compdof::detail
