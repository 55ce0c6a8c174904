#pragma once

#include <string>

#include <json.hpp>

#include "dycert/certify.hpp"

namespace dycert {

using Json = nlohmann::ordered_json;

Json to_json(const DyadicInterval& I);  // {"m": string, "n": int}
Json to_json(const StepMeasure& w);     // {"blocks": [{lo,hi,height}]}
Json to_json(const StepFunction& f);    // {"pieces": [{lo,hi,value}]}
Json to_json(const IntervalList& spans);
Json to_json(const StoppingNode& n);  // recursive {interval,stage,sign,children}
Json to_json(const CoronaNode& n);    // recursive {interval,density,children}
Json to_json(const Certificate& cert, bool include_timings = false);
Json to_json(const EnergyReport& report);

// CSV of blocks: header lo,hi,height, one row per block, "num/den" fields.
std::string to_csv(const StepMeasure& w);
std::string certificates_to_csv(const std::vector<Certificate>& certs);

// Step coordinates of stage_measure(c, stage) plus the per-node markers
// (jumping point, Xi chain) needed to redraw the construction figures.
Json figure_data(const Construction& c, int stage);
std::string figure_data_csv(const Construction& c, int stage);

std::string render_text_table(const std::vector<Certificate>& certs);

}  // namespace dycert
