#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dycert/certify.hpp"
#include "dycert/io.hpp"

namespace {

using dycert::Json;

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << payload;
}

void error_json(const std::string& kind, const std::string& message, Json extra = {}) {
    Json err{{"error", Json{{"kind", kind}, {"message", message}}}};
    for (auto& [key, value] : extra.items()) err["error"][key] = value;
    std::cerr << err.dump() << "\n";
}

int parse_stages(const std::string& s, int k) {
    if (s == "auto") return dycert::default_stage_count(k);
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--stages", "expected a nonnegative integer or 'auto'");
    }
}

struct CommonOpts {
    int k = 1;
    std::string stages = "auto";
    std::uint64_t seed = 0;
    std::string signs = "plus";
    std::string format = "json";
    std::string out;
    std::uint64_t node_cap = dycert::kDefaultNodeCap;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_signs = true) {
    cmd->add_option("--k", o.k, "multiplier order k (chain length 2k+1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--stages", o.stages, "construction stages, or 'auto' for M(k)");
    cmd->add_option("--node-cap", o.node_cap, "resource cap on forest node count");
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    if (with_signs) {
        cmd->add_option("--signs", o.signs, "sign assignment mode")
            ->check(CLI::IsMember({"plus", "random", "derandomized"}));
        cmd->add_option("--seed", o.seed, "seed for --signs random");
    }
}

dycert::Construction build_with_signs(const CommonOpts& o, int stages) {
    dycert::Construction c = dycert::build(o.k, stages, o.node_cap);
    if (o.signs == "random") dycert::assign_signs_random(c, o.seed);
    else if (o.signs == "derandomized") dycert::derandomize_signs(c);
    else dycert::assign_signs_all_plus(c);
    return c;
}

int run_build(const CommonOpts& o) {
    int stages = parse_stages(o.stages, o.k);
    dycert::Construction c = build_with_signs(o, stages);
    Json summary{{"k", c.k},
                 {"stages", c.stages},
                 {"nodes", c.node_count()},
                 {"weight_blocks", c.weight.blocks().size()},
                 {"total_mass", dycert::rat_str(c.weight.total_mass())},
                 {"signs", c.sign_mode}};
    emit(o.out, summary.dump(2));
    return 0;
}

const std::vector<std::string> kAllChecks = {
    "dist_estimate", "measure_preserving", "corona_match", "main_estimate",
    "maximal_bounds", "main_lemma",        "sign_oracle"};

int run_verify(const CommonOpts& o, const std::vector<std::string>& requested) {
    int stages = parse_stages(o.stages, o.k);
    std::vector<std::string> checks = requested;
    if (checks.empty() || (checks.size() == 1 && checks[0] == "all")) checks = kAllChecks;

    dycert::Construction c = build_with_signs(o, stages);
    std::vector<dycert::Certificate> certs;
    for (const auto& name : checks) {
        if (name == "dist_estimate") {
            for (long lambda : {1L, 6L, 36L})
                certs.push_back(dycert::check_dist_estimate(dycert::unit_interval(),
                                                            dycert::Rational(lambda), o.k));
        } else if (name == "measure_preserving") {
            for (int j = 0; j + 1 <= c.stages; ++j)
                certs.push_back(dycert::check_measure_preserving(c, j));
        } else if (name == "corona_match") {
            certs.push_back(dycert::check_corona_match(c));
        } else if (name == "main_estimate") {
            certs.push_back(dycert::check_main_estimate(c));
        } else if (name == "maximal_bounds") {
            certs.push_back(dycert::check_maximal_bounds(c));
        } else if (name == "main_lemma") {
            certs.push_back(dycert::main_lemma_report(o.k, stages, o.node_cap).second);
        } else if (name == "sign_oracle") {
            certs.push_back(dycert::check_sign_oracle(o.k, stages));
        } else {
            throw CLI::ValidationError("--checks", "unknown check: " + name);
        }
    }
    for (auto& cert : certs)
        if (o.signs == "random") cert.params.seed = o.seed;

    std::string payload;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& cert : certs) arr.push_back(dycert::to_json(cert, o.timings));
        payload = arr.dump(2);
    } else if (o.format == "csv") {
        payload = dycert::certificates_to_csv(certs);
    } else {
        payload = dycert::render_text_table(certs);
    }
    emit(o.out, payload);
    for (const auto& cert : certs)
        if (!cert.pass) return 1;
    return 0;
}

int run_energy(const CommonOpts& o) {
    int stages = parse_stages(o.stages, o.k);
    auto [report, cert] = dycert::main_lemma_report(o.k, stages, o.node_cap);
    Json out{{"report", dycert::to_json(report)},
             {"certificate", dycert::to_json(cert, o.timings)}};
    emit(o.out, o.format == "csv" ? dycert::certificates_to_csv({cert}) : out.dump(2));
    return cert.pass ? 0 : 1;
}

int run_export(const CommonOpts& o, const std::string& what, int figure_stage) {
    int stages = parse_stages(o.stages, o.k);
    dycert::Construction c = build_with_signs(o, stages);
    std::string payload;
    if (what == "weight") {
        payload = o.format == "csv" ? dycert::to_csv(c.weight) : dycert::to_json(c.weight).dump(2);
    } else if (what == "forest") {
        payload = dycert::to_json(c.root).dump(2);
    } else if (what == "corona") {
        payload = dycert::to_json(dycert::corona(c.weight, c.root.interval).root).dump(2);
    } else if (what == "mw") {
        payload = dycert::to_json(dycert::maximal_on_support(c.weight)).dump(2);
    } else if (what == "sigma") {
        dycert::StepMeasure sg = dycert::sigma(c.weight);
        payload = o.format == "csv" ? dycert::to_csv(sg) : dycert::to_json(sg).dump(2);
    } else if (what == "figure") {
        int fs = figure_stage < 0 ? c.stages : figure_stage;
        payload = o.format == "csv" ? dycert::figure_data_csv(c, fs)
                                    : dycert::figure_data(c, fs).dump(2);
    } else {
        throw CLI::ValidationError("--what", "unknown export kind: " + what);
    }
    emit(o.out, payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact construction and certification of dyadic weights and Haar multipliers"};
    app.require_subcommand(1);

    CommonOpts build_opts, verify_opts, energy_opts, export_opts;
    std::vector<std::string> checks;
    std::string export_what = "weight";
    int figure_stage = -1;

    CLI::App* cmd_build = app.add_subcommand("build", "build the stopping forest and weight");
    add_common(cmd_build, build_opts);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run certificate checks");
    add_common(cmd_verify, verify_opts);
    cmd_verify->add_option("--checks", checks,
                           "comma-separated checks or 'all'")
        ->delimiter(',');
    cmd_verify->add_flag("--timings", verify_opts.timings,
                         "include runtime_ms in JSON (breaks byte-determinism)");

    CLI::App* cmd_energy = app.add_subcommand("energy", "derandomized main-lemma energy report");
    add_common(cmd_energy, energy_opts);
    cmd_energy->add_flag("--timings", energy_opts.timings, "include runtime_ms in JSON");

    CLI::App* cmd_export = app.add_subcommand("export", "export weight/forest/figure data");
    add_common(cmd_export, export_opts);
    cmd_export->add_option("--what", export_what,
                           "weight|forest|corona|mw|sigma|figure");
    cmd_export->add_option("--figure-stage", figure_stage,
                           "stage for --what figure (default: final)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        error_json("usage", e.what());
        return 2;
    }

    try {
        if (cmd_build->parsed()) return run_build(build_opts);
        if (cmd_verify->parsed()) return run_verify(verify_opts, checks);
        if (cmd_energy->parsed()) return run_energy(energy_opts);
        if (cmd_export->parsed()) return run_export(export_opts, export_what, figure_stage);
    } catch (const dycert::ResourceCapError& e) {
        error_json("resource-cap", e.what(),
                   Json{{"required_nodes", e.required_nodes},
                        {"node_cap", e.node_cap}});
        return 2;
    } catch (const CLI::ValidationError& e) {
        error_json("usage", e.what());
        return 2;
    } catch (const std::exception& e) {
        error_json("runtime", e.what());
        return 2;
    }
    return 2;
}
