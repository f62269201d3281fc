// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV renderings of solver and study results. Reals are emitted at
// shortest round-trip precision; non-finite values become JSON null.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spiralnls/config.hpp"
#include "spiralnls/diagnostics.hpp"
#include "spiralnls/minimize.hpp"
#include "spiralnls/radial_oracle.hpp"
#include "spiralnls/studies.hpp"

namespace spiralnls
{

using Json = nlohmann::ordered_json;

const char *artifact_version();

Json to_json(const ModelParams &params);
Json to_json(const PolarGrid &grid);
Json to_json(const EnergyBreakdown &e);
Json to_json(const NehariResidual &r);
Json to_json(const SymmetryReport &s);
Json to_json(const SolveReport &r, const ModelParams &params);
Json to_json(const RadialProfile &w);
Json to_json(const SweepRecord &r);
Json to_json(const LambdaBracket &b);
Json to_json(const InfinityRecord &r);
Json to_json(const RescaleRecord &r);
Json to_json(const LimitSolution &l);

// Everything needed to repeat a run: the command, the canonical config, the
// resolved parameters and the library version.
Json manifest(const std::string &command, const RunConfig &cfg);

std::string sweep_csv(const std::vector<SweepRecord> &records);
std::string infinity_csv(const std::vector<InfinityRecord> &records);
std::string rescale_csv(const std::vector<RescaleRecord> &records);
std::string trace_csv(const std::vector<TraceEntry> &trace);

}  // namespace spiralnls
