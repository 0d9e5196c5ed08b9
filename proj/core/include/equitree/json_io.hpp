#pragma once

#include <string>

#include "equitree/coloring.hpp"
#include "equitree/constructive.hpp"
#include "equitree/exact.hpp"
#include "equitree/generators.hpp"

namespace equitree {

// All emitters produce deterministic output: object keys are sorted and the
// same value always serializes to the same bytes.

std::string coloring_to_json(const Coloring& c, bool pretty = true);
Coloring coloring_from_json(const std::string& text);

std::string decision_to_json(int k, const Decision& d, bool pretty = true);

std::string verification_to_json(const VerificationReport& rep, bool pretty = true);

// snapshot_path is recorded verbatim inside the report so consumers can
// locate the replayable state written next to it; pass "" when none.
std::string stuck_report_to_json(const StuckReport& rep, const std::string& snapshot_path,
                                 bool pretty = true);

std::string snapshot_to_json(const StuckSnapshot& snap, bool pretty = true);
StuckSnapshot snapshot_from_json(const std::string& text);

std::string gen_spec_to_json(const GenSpec& spec, bool pretty = true);
// Accepts an object with "kind" plus the fields that kind uses; unknown
// keys are rejected so config typos fail loudly.
GenSpec gen_spec_from_json(const std::string& text);

}  // namespace equitree
