#pragma once

#include <string>

#include "mpm.hpp"
#include "refine.hpp"
#include "signal.hpp"

// JSON wire formats.
//   Signal:          {"spikes":[{"re":..,"im":..,"f":..}, ...]}
//   MeasurementSet:  {"n":..,"sigma":..,"seed":..,"values":[{"re":..,"im":..}, ...]}
//                    with values ordered ell = -n ... n; "seed" may be absent
//   RecoveryResult:  {"spikes":[...],"diagnostics":{...},"warnings":[...]}
//   RefineOutcome:   {"locations":[...],"oracle_calls":..,"gamma_trace":[...]}
// Parsers ignore unknown keys, so artifact files may carry extra metadata.

namespace specres {

std::string signal_to_json(const Signal& signal);
Signal signal_from_json(const std::string& text);

std::string measurement_to_json(const MeasurementSet& meas);
MeasurementSet measurement_from_json(const std::string& text);

std::string recovery_to_json(const RecoveryResult& result);
std::string refine_outcome_to_json(const RefineOutcome& outcome);

}  // namespace specres
