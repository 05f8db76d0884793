// Command-line front end: prototype / synth / sim / geom / report.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rfkit/errors.hpp"
#include "rfkit/microstrip.hpp"
#include "rfkit/netsim.hpp"
#include "rfkit/prototype.hpp"
#include "rfkit/report.hpp"
#include "rfkit/synthesis.hpp"
#include "rfkit/touchstone.hpp"

using namespace rfkit;

namespace {

struct Overrides {
    std::optional<double> f0;
    std::optional<double> fbw;
    std::optional<std::string> topology;
    std::optional<std::string> sweep;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--f0", ov.f0, "Override center frequency in Hz");
    cmd->add_option("--fbw", ov.fbw, "Override fractional bandwidth");
    cmd->add_option("--topology", ov.topology, "Override topology: single|dual");
    cmd->add_option("--sweep", ov.sweep,
                    "Override sweep as start:stop:points[:log]");
}

SweepGrid parse_sweep_arg(const std::string& text) {
    SweepGrid grid;
    grid.spacing = GridSpacing::Linear;
    char spacing[8] = "linear";
    const int n = std::sscanf(text.c_str(), "%lf:%lf:%d:%7s", &grid.f_start_hz,
                              &grid.f_stop_hz, &grid.n_points, spacing);
    if (n < 3) {
        throw config_error("--sweep expects start:stop:points[:log], got '" +
                           text + "'");
    }
    if (n == 4) {
        const std::string sp = spacing;
        if (sp == "log") {
            grid.spacing = GridSpacing::Log;
        } else if (sp != "lin" && sp != "linear") {
            throw config_error("--sweep spacing must be lin or log, got '" + sp + "'");
        }
    }
    validate_grid(grid);
    return grid;
}

DesignConfig load_with_overrides(const std::string& config_path, const Overrides& ov) {
    DesignConfig config = load_config(config_path);
    if (ov.f0) config.filter.f0_hz = *ov.f0;
    if (ov.fbw) config.filter.fbw = *ov.fbw;
    if (ov.topology) {
        if (*ov.topology == "single" || *ov.topology == "single_band") {
            config.filter.topology = Topology::SingleBand;
        } else if (*ov.topology == "dual" || *ov.topology == "dual_band") {
            config.filter.topology = Topology::DualBand;
        } else {
            throw config_error("--topology must be single or dual, got '" +
                               *ov.topology + "'");
        }
    }
    if (ov.sweep) config.sweep = parse_sweep_arg(*ov.sweep);
    validate_filter_spec(config.filter);
    return config;
}

struct SynthOutput {
    PrototypeCoefficients proto;
    SynthesisResult synth;
    Netlist netlist;
};

SynthOutput synthesize(const DesignConfig& config) {
    SynthOutput out;
    out.proto = chebyshev_g_values(config.filter.order, config.filter.ripple_db);
    out.synth = bandpass_elements(config.filter, out.proto);
    out.netlist = config.filter.topology == Topology::DualBand
                      ? build_dual_band_netlist(config.filter, out.synth.elements)
                      : build_single_band_netlist(config.filter, out.synth.elements);
    return out;
}

void print_prototype(const PrototypeCoefficients& proto) {
    std::printf("order %d, ripple %.6f dB (RL %.4f dB)\n", proto.order,
                proto.ripple_db, return_loss_from_ripple(proto.ripple_db));
    for (size_t k = 0; k < proto.g.size(); ++k) {
        std::printf("  g%zu = %.6f\n", k, proto.g[k]);
    }
    if (proto.beyond_validated_range()) {
        std::printf("  note: order > 20 is outside the validated range\n");
    }
}

int cmd_prototype(int order, std::optional<double> ripple,
                  std::optional<double> rl, std::optional<double> fit_g1) {
    const int given = int(ripple.has_value()) + int(rl.has_value()) +
                      int(fit_g1.has_value());
    if (given != 1) {
        throw config_error(
            "prototype needs exactly one of --ripple-db, --return-loss-db, --fit-g1");
    }
    double ripple_db;
    if (ripple) {
        ripple_db = *ripple;
    } else if (rl) {
        ripple_db = ripple_from_return_loss(*rl);
        std::printf("return loss %.4f dB -> ripple %.6f dB\n", *rl, ripple_db);
    } else {
        ripple_db = fit_ripple_to_g1(order, *fit_g1);
        std::printf("fitted ripple for g1 = %.6f: %.9f dB\n", *fit_g1, ripple_db);
    }
    print_prototype(chebyshev_g_values(order, ripple_db));
    return 0;
}

int cmd_synth(const DesignConfig& config, const std::string& netlist_path) {
    const SynthOutput out = synthesize(config);
    print_prototype(out.proto);
    const CouplingParams& cp = out.synth.coupling;
    const BandpassElements& el = out.synth.elements;
    std::printf("coupling: M = %.6f, Qe = %.4f, b = %.6f S\n", cp.m, cp.qe,
                cp.b_slope);
    std::printf("inverters: J01 = %.6f S, J12 = %.6f S\n", cp.j01, cp.j12);
    std::printf("elements: C = %.4f pF, L = %.4f nH, L01 = %.4f nH, L12 = %.4f nH\n",
                el.c_res * 1e12, el.l_res * 1e9, el.l_io * 1e9, el.l_inter * 1e9);
    std::printf("netlist: %d nodes, %zu elements (%s)\n", out.netlist.node_count,
                out.netlist.elements.size(),
                config.filter.topology == Topology::DualBand ? "dual-band"
                                                             : "single-band");
    if (!netlist_path.empty()) {
        std::ofstream f(netlist_path, std::ios::binary | std::ios::trunc);
        f << serialize_netlist(out.netlist);
        if (!f) throw io_error("cannot write " + netlist_path);
        std::printf("wrote %s\n", netlist_path.c_str());
    }
    return 0;
}

int cmd_sim(const DesignConfig& config, const std::string& touchstone_path,
            const std::string& csv_path) {
    const SynthOutput out = synthesize(config);
    const SParamSweep sweep = sweep_sparams(out.netlist, config.sweep);
    const auto bands = extract_band_metrics(sweep, config.effective_rl_threshold());

    std::printf("swept %d points, %.4f-%.4f GHz; RL threshold %.2f dB\n",
                config.sweep.n_points, config.sweep.f_start_hz / 1e9,
                config.sweep.f_stop_hz / 1e9, config.effective_rl_threshold());
    if (bands.empty()) {
        std::printf("no passband crosses the threshold\n");
    }
    for (size_t i = 0; i < bands.size(); ++i) {
        const BandMetrics& b = bands[i];
        std::printf(
            "band %zu: center %.6f GHz, fbw %.3f%%, edges %.6f/%.6f GHz,\n"
            "         IL(center) %.4f dB, IL(peak) %.5f dB, worst RL %.2f dB\n",
            i + 1, b.f_center_hz / 1e9, b.fbw * 100, b.f_lo_hz / 1e9,
            b.f_hi_hz / 1e9, b.il_db, b.il_min_db, b.rl_min_db);
    }
    if (!touchstone_path.empty()) {
        write_touchstone(sweep, touchstone_path);
        std::printf("wrote %s\n", touchstone_path.c_str());
    }
    if (!csv_path.empty()) {
        write_csv(sweep, csv_path);
        std::printf("wrote %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_geom(const DesignConfig& config) {
    const MicrostripLine line = synthesize_width(config.ms_z0_target_ohm,
                                                 config.substrate,
                                                 config.filter.f0_hz);
    const UShapeGeometry geom =
        u_fold_geometry(line, config.filter.f0_hz, config.base_fraction);
    const auto esize =
        electrical_size(geom.bbox_w_m, geom.bbox_h_m, line.lambda_g_m);

    std::printf("microstrip: W = %.4f mm, Z0 = %.3f ohm, eps_eff = %.4f\n",
                line.w_m * 1e3, line.z0_ohm, line.eps_eff);
    std::printf("lambda_g(%.4f GHz) = %.4f mm\n", line.f_hz / 1e9,
                line.lambda_g_m * 1e3);
    std::printf("u-shape: total %.4f mm = base %.4f + 2 x arm %.4f mm\n",
                geom.total_length_m * 1e3, geom.base_len_m * 1e3,
                geom.arm_len_m * 1e3);
    std::printf("bbox: %.4f x %.4f mm = %.4f x %.4f lambda_g\n",
                geom.bbox_w_m * 1e3, geom.bbox_h_m * 1e3, esize.first,
                esize.second);
    return 0;
}

int cmd_report(DesignConfig config, const std::string& out_path) {
    if (!out_path.empty()) config.outputs.report_path = out_path;
    const DesignReport report = run_pipeline(config);
    if (config.outputs.report_path) {
        std::printf("wrote %s\n", config.outputs.report_path->c_str());
    } else {
        std::fputs(serialize_report(report).c_str(), stdout);
    }
    if (config.outputs.touchstone_path) {
        std::printf("wrote %s\n", config.outputs.touchstone_path->c_str());
    }
    if (config.outputs.csv_path) {
        std::printf("wrote %s\n", config.outputs.csv_path->c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled-resonator bandpass filter synthesis and simulation"};
    app.require_subcommand(1);

    // prototype
    auto* proto_cmd = app.add_subcommand("prototype", "Chebyshev lowpass g-values");
    int order = 2;
    std::optional<double> ripple, rl, fit_g1;
    proto_cmd->add_option("--order", order, "Filter order")->required();
    proto_cmd->add_option("--ripple-db", ripple, "Passband ripple in dB");
    proto_cmd->add_option("--return-loss-db", rl, "Equivalent return loss in dB");
    proto_cmd->add_option("--fit-g1", fit_g1, "Recover ripple from a target g1");

    // config-based subcommands
    std::string config_path;
    Overrides ov;
    std::string netlist_path, touchstone_path, csv_path, report_path;

    auto* synth_cmd = app.add_subcommand("synth", "Bandpass element synthesis");
    synth_cmd->add_option("--config", config_path, "Design config JSON")->required();
    synth_cmd->add_option("--netlist", netlist_path, "Write the netlist JSON here");
    add_override_flags(synth_cmd, ov);

    auto* sim_cmd = app.add_subcommand("sim", "S-parameter sweep and band metrics");
    sim_cmd->add_option("--config", config_path, "Design config JSON")->required();
    sim_cmd->add_option("--touchstone", touchstone_path, "Write Touchstone .s2p here");
    sim_cmd->add_option("--csv", csv_path, "Write CSV here");
    add_override_flags(sim_cmd, ov);

    auto* geom_cmd = app.add_subcommand("geom", "U-shaped resonator geometry");
    geom_cmd->add_option("--config", config_path, "Design config JSON")->required();
    add_override_flags(geom_cmd, ov);

    auto* report_cmd = app.add_subcommand("report", "Full design pipeline");
    report_cmd->add_option("--config", config_path, "Design config JSON")->required();
    report_cmd->add_option("--out", report_path, "Report JSON destination");
    add_override_flags(report_cmd, ov);

    CLI11_PARSE(app, argc, argv);

    try {
        if (proto_cmd->parsed()) return cmd_prototype(order, ripple, rl, fit_g1);
        const DesignConfig config = load_with_overrides(config_path, ov);
        if (synth_cmd->parsed()) return cmd_synth(config, netlist_path);
        if (sim_cmd->parsed()) return cmd_sim(config, touchstone_path, csv_path);
        if (geom_cmd->parsed()) return cmd_geom(config);
        if (report_cmd->parsed()) return cmd_report(config, report_path);
    } catch (const pipeline_error& e) {
        std::fprintf(stderr, "rfkit: error [%s]: %s\n", e.stage().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rfkit: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
