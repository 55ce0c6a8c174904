#include "dycert/io.hpp"

#include <iomanip>
#include <sstream>

namespace dycert {

Json to_json(const DyadicInterval& I) {
    return Json{{"m", I.index().get_str()}, {"n", I.scale()}};
}

Json to_json(const StepMeasure& w) {
    Json blocks = Json::array();
    for (const auto& b : w.blocks())
        blocks.push_back(Json{{"lo", rat_str(b.lo)}, {"hi", rat_str(b.hi)},
                              {"height", rat_str(b.height)}});
    return Json{{"blocks", std::move(blocks)}};
}

Json to_json(const StepFunction& f) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces())
        pieces.push_back(Json{{"lo", rat_str(p.lo)}, {"hi", rat_str(p.hi)},
                              {"value", rat_str(p.value)}});
    return Json{{"pieces", std::move(pieces)}};
}

Json to_json(const IntervalList& spans) {
    Json out = Json::array();
    for (const auto& s : spans)
        out.push_back(Json{{"lo", rat_str(s.lo)}, {"hi", rat_str(s.hi)}});
    return out;
}

Json to_json(const StoppingNode& n) {
    Json children = Json::array();
    for (const auto& ch : n.children) children.push_back(to_json(ch));
    return Json{{"interval", to_json(n.interval)},
                {"stage", n.stage},
                {"sign", n.sign},
                {"children", std::move(children)}};
}

Json to_json(const CoronaNode& n) {
    Json children = Json::array();
    for (const auto& ch : n.children) children.push_back(to_json(ch));
    return Json{{"interval", to_json(n.interval)},
                {"density", rat_str(n.density)},
                {"children", std::move(children)}};
}

Json to_json(const Certificate& cert, bool include_timings) {
    Json params{{"k", cert.params.k}, {"stages", cert.params.stages}};
    if (cert.params.seed) params["seed"] = *cert.params.seed;
    params["signs"] = cert.params.signs;
    Json witnesses = Json::array();
    for (const auto& w : cert.witnesses)
        witnesses.push_back(Json{{"label", w.label}, {"value", w.value}});
    Json out{{"name", cert.name},
             {"params", std::move(params)},
             {"witnesses", std::move(witnesses)},
             {"verdict", cert.pass ? "pass" : "fail"}};
    if (include_timings) out["runtime_ms"] = cert.runtime_ms;
    return out;
}

Json to_json(const EnergyReport& report) {
    return Json{{"k", report.k},
                {"stages", report.stages},
                {"expectation_energy", rat_str(report.expectation_energy)},
                {"achieved_energy", rat_str(report.achieved_energy)},
                {"ratio", rat_str(report.ratio)}};
}

std::string to_csv(const StepMeasure& w) {
    std::string out = "lo,hi,height\n";
    for (const auto& b : w.blocks())
        out += rat_str(b.lo) + "," + rat_str(b.hi) + "," + rat_str(b.height) + "\n";
    return out;
}

std::string certificates_to_csv(const std::vector<Certificate>& certs) {
    std::string out = "name,k,stages,signs,verdict,witnesses\n";
    for (const auto& c : certs) {
        std::string ws;
        for (const auto& w : c.witnesses) {
            if (!ws.empty()) ws += "; ";
            ws += w.label + "=" + w.value;
        }
        out += c.name + "," + std::to_string(c.params.k) + "," +
               std::to_string(c.params.stages) + "," + c.params.signs + "," +
               (c.pass ? "pass" : "fail") + ",\"" + ws + "\"\n";
    }
    return out;
}

namespace {

Json step_coordinates(const StepMeasure& w) {
    // (x, value after x) pairs, starting at 0.
    Json steps = Json::array();
    auto push = [&](const Rational& x, const Rational& y) {
        steps.push_back(Json{{"x", rat_str(x)}, {"y", rat_str(y)}});
    };
    const auto& bs = w.blocks();
    if (bs.empty() || bs.front().lo != 0) push(Rational(0), Rational(0));
    for (std::size_t i = 0; i < bs.size(); ++i) {
        push(bs[i].lo, bs[i].height);
        if (i + 1 == bs.size() || bs[i + 1].lo != bs[i].hi) push(bs[i].hi, Rational(0));
    }
    return steps;
}

}  // namespace

Json figure_data(const Construction& c, int stage) {
    StepMeasure mu = stage_measure(c, stage);
    Json markers = Json::array();
    visit(c.root, [&](const StoppingNode& n) {
        if (n.stage > stage) return;
        Json chain = Json::array();
        for (const auto& I : n.xi(c.k).chain) chain.push_back(to_json(I));
        markers.push_back(Json{{"interval", to_json(n.interval)},
                               {"stage", n.stage},
                               {"jumping_point", rat_str(n.interval.jumping_point())},
                               {"xi_chain", std::move(chain)}});
    });
    return Json{{"k", c.k},
                {"stage", stage},
                {"steps", step_coordinates(mu)},
                {"markers", std::move(markers)}};
}

std::string figure_data_csv(const Construction& c, int stage) {
    StepMeasure mu = stage_measure(c, stage);
    std::string out = "kind,stage,a,b,c\n";
    Json steps = step_coordinates(mu);
    for (const auto& s : steps)
        out += "step," + std::to_string(stage) + "," + s["x"].get<std::string>() + "," +
               s["y"].get<std::string>() + ",\n";
    visit(c.root, [&](const StoppingNode& n) {
        if (n.stage > stage) return;
        out += "jp," + std::to_string(n.stage) + "," +
               rat_str(n.interval.jumping_point()) + ",,\n";
        for (const auto& I : n.xi(c.k).chain)
            out += "xi," + std::to_string(n.stage) + "," + rat_str(I.lo()) + "," +
                   rat_str(I.hi()) + ",\n";
    });
    return out;
}

std::string render_text_table(const std::vector<Certificate>& certs) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "check" << std::setw(8) << "verdict"
       << "witnesses\n";
    for (const auto& c : certs) {
        std::string ws;
        for (const auto& w : c.witnesses) {
            if (!ws.empty()) ws += "  ";
            ws += w.label + "=" + w.value;
        }
        os << std::left << std::setw(28) << c.name << std::setw(8)
           << (c.pass ? "pass" : "FAIL") << ws << "\n";
    }
    return os.str();
}

}  // namespace dycert
