#include "rfkit/report.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "atomic_write.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/prototype.hpp"
#include "rfkit/touchstone.hpp"

namespace rfkit {

using nlohmann::json;

namespace {

// ---- enum/string maps ----

std::string to_string(Topology t) {
    return t == Topology::DualBand ? "dual_band" : "single_band";
}

Topology topology_from_string(const std::string& s) {
    if (s == "single_band") return Topology::SingleBand;
    if (s == "dual_band") return Topology::DualBand;
    throw config_error("unknown topology '" + s +
                       "' (expected single_band or dual_band)");
}

std::string to_string(CouplingModel m) {
    return m == CouplingModel::InductivePi ? "inductive_pi" : "ideal_inverter";
}

CouplingModel coupling_model_from_string(const std::string& s) {
    if (s == "ideal_inverter") return CouplingModel::IdealInverter;
    if (s == "inductive_pi") return CouplingModel::InductivePi;
    throw config_error("unknown coupling_model '" + s +
                       "' (expected ideal_inverter or inductive_pi)");
}

std::string to_string(GridSpacing s) {
    return s == GridSpacing::Log ? "log" : "linear";
}

GridSpacing spacing_from_string(const std::string& s) {
    if (s == "linear") return GridSpacing::Linear;
    if (s == "log") return GridSpacing::Log;
    throw config_error("unknown spacing '" + s + "' (expected linear or log)");
}

std::string to_string(ElementKind k) {
    switch (k) {
        case ElementKind::Resistor: return "resistor";
        case ElementKind::Inductor: return "inductor";
        case ElementKind::Capacitor: return "capacitor";
        case ElementKind::Inverter: return "inverter";
    }
    return "?";
}

ElementKind element_kind_from_string(const std::string& s) {
    if (s == "resistor") return ElementKind::Resistor;
    if (s == "inductor") return ElementKind::Inductor;
    if (s == "capacitor") return ElementKind::Capacitor;
    if (s == "inverter") return ElementKind::Inverter;
    throw config_error("unknown element kind '" + s + "'");
}

// ---- strict config reading ----

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw config_error("config section '" +
                           (where.empty() ? std::string("root") : where) +
                           "' must be a JSON object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) { known = true; break; }
        }
        if (!known) {
            throw config_error("unknown key '" + where + key + "'");
        }
    }
}

double get_number(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw config_error("missing required key '" + where + key + "'");
    }
    if (!it->is_number()) {
        throw config_error("key '" + where + key + "' must be a number");
    }
    return it->get<double>();
}

FilterSpec parse_filter(const json& obj) {
    reject_unknown_keys(obj, "filter.",
                        {"f0_hz", "fbw", "z0_ohm", "order", "ripple_db",
                         "return_loss_db", "topology", "q_unloaded",
                         "coupling_model"});
    FilterSpec spec;
    spec.f0_hz = get_number(obj, "filter.", "f0_hz");
    spec.fbw = get_number(obj, "filter.", "fbw");
    if (obj.contains("z0_ohm")) spec.z0_ohm = get_number(obj, "filter.", "z0_ohm");
    if (obj.contains("order")) {
        if (!obj["order"].is_number_integer()) {
            throw config_error("key 'filter.order' must be an integer");
        }
        spec.order = obj["order"].get<int>();
    }

    const bool has_ripple = obj.contains("ripple_db");
    const bool has_rl = obj.contains("return_loss_db");
    if (has_ripple == has_rl) {
        throw config_error(
            "filter requires exactly one of 'ripple_db' or 'return_loss_db'");
    }
    if (has_ripple) {
        spec.ripple_db = get_number(obj, "filter.", "ripple_db");
    } else {
        const double rl = get_number(obj, "filter.", "return_loss_db");
        spec.return_loss_db = rl;
        spec.ripple_db = ripple_from_return_loss(rl);
    }

    if (obj.contains("topology")) {
        spec.topology = topology_from_string(obj["topology"].get<std::string>());
    }
    if (obj.contains("q_unloaded")) {
        spec.q_unloaded = get_number(obj, "filter.", "q_unloaded");
    }
    if (obj.contains("coupling_model")) {
        spec.coupling_model =
            coupling_model_from_string(obj["coupling_model"].get<std::string>());
    }
    validate_filter_spec(spec);
    return spec;
}

SubstrateSpec parse_substrate(const json& obj, SubstrateSpec sub) {
    reject_unknown_keys(obj, "substrate.",
                        {"eps_r", "h_m", "tan_delta", "t_metal_m", "sigma_s_per_m"});
    if (obj.contains("eps_r")) sub.eps_r = get_number(obj, "substrate.", "eps_r");
    if (obj.contains("h_m")) sub.h_m = get_number(obj, "substrate.", "h_m");
    if (obj.contains("tan_delta")) sub.tan_delta = get_number(obj, "substrate.", "tan_delta");
    if (obj.contains("t_metal_m")) sub.t_metal_m = get_number(obj, "substrate.", "t_metal_m");
    if (obj.contains("sigma_s_per_m"))
        sub.sigma_s_per_m = get_number(obj, "substrate.", "sigma_s_per_m");
    validate_substrate(sub);
    return sub;
}

SweepGrid parse_sweep(const json& obj, SweepGrid grid) {
    reject_unknown_keys(obj, "sweep.",
                        {"f_start_hz", "f_stop_hz", "n_points", "spacing"});
    if (obj.contains("f_start_hz")) grid.f_start_hz = get_number(obj, "sweep.", "f_start_hz");
    if (obj.contains("f_stop_hz")) grid.f_stop_hz = get_number(obj, "sweep.", "f_stop_hz");
    if (obj.contains("n_points")) {
        if (!obj["n_points"].is_number_integer()) {
            throw config_error("key 'sweep.n_points' must be an integer");
        }
        grid.n_points = obj["n_points"].get<int>();
    }
    if (obj.contains("spacing")) {
        grid.spacing = spacing_from_string(obj["spacing"].get<std::string>());
    }
    validate_grid(grid);
    return grid;
}

} // namespace

DesignConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw config_error("config root must be a JSON object");
    }
    reject_unknown_keys(root, "",
                        {"filter", "substrate", "sweep", "metrics", "microstrip",
                         "outputs"});
    if (!root.contains("filter")) {
        throw config_error("missing required key 'filter'");
    }

    DesignConfig config;
    config.filter = parse_filter(root["filter"]);
    if (root.contains("substrate")) {
        config.substrate = parse_substrate(root["substrate"], config.substrate);
    }
    if (root.contains("sweep")) {
        config.sweep = parse_sweep(root["sweep"], config.sweep);
    }
    if (root.contains("metrics")) {
        const json& m = root["metrics"];
        reject_unknown_keys(m, "metrics.", {"rl_threshold_db"});
        if (m.contains("rl_threshold_db")) {
            const double thr = get_number(m, "metrics.", "rl_threshold_db");
            detail::require_positive(thr, "rl_threshold_db");
            config.rl_threshold_db = thr;
        }
    }
    if (root.contains("microstrip")) {
        const json& m = root["microstrip"];
        reject_unknown_keys(m, "microstrip.", {"z0_target_ohm", "base_fraction"});
        if (m.contains("z0_target_ohm")) {
            config.ms_z0_target_ohm = get_number(m, "microstrip.", "z0_target_ohm");
            detail::require_positive(config.ms_z0_target_ohm, "z0_target_ohm");
        }
        if (m.contains("base_fraction")) {
            config.base_fraction = get_number(m, "microstrip.", "base_fraction");
            if (!(config.base_fraction > 0.0 && config.base_fraction < 1.0)) {
                throw config_error("base_fraction must be in (0, 1)");
            }
        }
    }
    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        reject_unknown_keys(o, "outputs.",
                            {"report_path", "touchstone_path", "csv_path"});
        auto get_path = [&o](const char* key) -> std::optional<std::string> {
            if (!o.contains(key)) return std::nullopt;
            if (!o[key].is_string()) {
                throw config_error(std::string("key 'outputs.") + key +
                                   "' must be a string");
            }
            return o[key].get<std::string>();
        };
        config.outputs.report_path = get_path("report_path");
        config.outputs.touchstone_path = get_path("touchstone_path");
        config.outputs.csv_path = get_path("csv_path");
    }
    return config;
}

DesignConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

json config_to_json(const DesignConfig& c) {
    json filter{{"f0_hz", c.filter.f0_hz},
                {"fbw", c.filter.fbw},
                {"z0_ohm", c.filter.z0_ohm},
                {"order", c.filter.order},
                {"topology", to_string(c.filter.topology)},
                {"coupling_model", to_string(c.filter.coupling_model)}};
    // exactly one of the two ripple spellings, so the echo re-parses cleanly
    if (c.filter.return_loss_db) {
        filter["return_loss_db"] = *c.filter.return_loss_db;
    } else {
        filter["ripple_db"] = c.filter.ripple_db;
    }
    if (c.filter.q_unloaded) filter["q_unloaded"] = *c.filter.q_unloaded;

    json root{
        {"filter", std::move(filter)},
        {"substrate",
         {{"eps_r", c.substrate.eps_r},
          {"h_m", c.substrate.h_m},
          {"tan_delta", c.substrate.tan_delta},
          {"t_metal_m", c.substrate.t_metal_m},
          {"sigma_s_per_m", c.substrate.sigma_s_per_m}}},
        {"sweep",
         {{"f_start_hz", c.sweep.f_start_hz},
          {"f_stop_hz", c.sweep.f_stop_hz},
          {"n_points", c.sweep.n_points},
          {"spacing", to_string(c.sweep.spacing)}}},
        {"microstrip",
         {{"z0_target_ohm", c.ms_z0_target_ohm},
          {"base_fraction", c.base_fraction}}},
    };
    if (c.rl_threshold_db) {
        root["metrics"] = {{"rl_threshold_db", *c.rl_threshold_db}};
    }
    json outputs = json::object();
    if (c.outputs.report_path) outputs["report_path"] = *c.outputs.report_path;
    if (c.outputs.touchstone_path) outputs["touchstone_path"] = *c.outputs.touchstone_path;
    if (c.outputs.csv_path) outputs["csv_path"] = *c.outputs.csv_path;
    if (!outputs.empty()) root["outputs"] = std::move(outputs);
    return root;
}

json netlist_to_json(const Netlist& n) {
    json elements = json::array();
    for (const Element& e : n.elements) {
        elements.push_back({{"kind", to_string(e.kind)},
                            {"nodes", {e.node_a, e.node_b}},
                            {"value", e.value}});
    }
    json ports = json::array();
    for (const Port& p : n.ports) {
        ports.push_back({{"node", p.node}, {"z_ref_ohm", p.z_ref}});
    }
    return {{"node_count", n.node_count},
            {"elements", std::move(elements)},
            {"ports", std::move(ports)}};
}

Netlist netlist_from_json(const json& j) {
    Netlist n;
    n.node_count = j.at("node_count").get<int>();
    for (const json& e : j.at("elements")) {
        n.elements.push_back({element_kind_from_string(e.at("kind").get<std::string>()),
                              e.at("nodes")[0].get<int>(), e.at("nodes")[1].get<int>(),
                              e.at("value").get<double>()});
    }
    const json& ports = j.at("ports");
    for (size_t i = 0; i < 2; ++i) {
        n.ports[i] = {ports.at(i).at("node").get<int>(),
                      ports.at(i).at("z_ref_ohm").get<double>()};
    }
    return n;
}

json bands_to_json(const std::vector<BandMetrics>& bands) {
    json out = json::array();
    for (const BandMetrics& b : bands) {
        out.push_back({{"f_center_hz", b.f_center_hz},
                       {"il_db", b.il_db},
                       {"il_min_db", b.il_min_db},
                       {"rl_min_db", b.rl_min_db},
                       {"f_lo_hz", b.f_lo_hz},
                       {"f_hi_hz", b.f_hi_hz},
                       {"fbw", b.fbw}});
    }
    return out;
}

} // namespace

std::string serialize_config(const DesignConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

std::string serialize_netlist(const Netlist& netlist) {
    return netlist_to_json(netlist).dump(2) + "\n";
}

std::string serialize_report(const DesignReport& r) {
    json root{
        {"version", r.version},
        {"config", config_to_json(r.config)},
        {"prototype",
         {{"order", r.proto.order},
          {"ripple_db", r.proto.ripple_db},
          {"g", r.proto.g}}},
        {"coupling",
         {{"m", r.coupling.m},
          {"qe", r.coupling.qe},
          {"b_slope_s", r.coupling.b_slope},
          {"j01_s", r.coupling.j01},
          {"j12_s", r.coupling.j12}}},
        {"elements",
         {{"c_res_f", r.elements.c_res},
          {"l_res_h", r.elements.l_res},
          {"l_io_h", r.elements.l_io},
          {"l_inter_h", r.elements.l_inter},
          {"j_ladder_s", r.elements.j_ladder}}},
        {"netlist", netlist_to_json(r.netlist)},
        {"bands", bands_to_json(r.bands)},
        {"microstrip_line",
         {{"w_m", r.line.w_m},
          {"z0_ohm", r.line.z0_ohm},
          {"eps_eff", r.line.eps_eff},
          {"lambda_g_m", r.line.lambda_g_m},
          {"f_hz", r.line.f_hz}}},
        {"u_shape",
         {{"total_length_m", r.geometry.total_length_m},
          {"base_len_m", r.geometry.base_len_m},
          {"arm_len_m", r.geometry.arm_len_m},
          {"trace_width_m", r.geometry.trace_width_m},
          {"bbox_w_m", r.geometry.bbox_w_m},
          {"bbox_h_m", r.geometry.bbox_h_m}}},
        {"electrical_size", {{"w_lambda", r.esize_w}, {"h_lambda", r.esize_h}}},
    };
    return root.dump(2) + "\n";
}

DesignReport parse_report(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("report is not valid JSON: ") + e.what());
    }
    DesignReport r;
    r.version = root.at("version").get<std::string>();
    r.config = parse_config(root.at("config").dump());

    const json& p = root.at("prototype");
    r.proto.order = p.at("order").get<int>();
    r.proto.ripple_db = p.at("ripple_db").get<double>();
    r.proto.g = p.at("g").get<std::vector<double>>();

    const json& c = root.at("coupling");
    r.coupling = {c.at("m").get<double>(), c.at("qe").get<double>(),
                  c.at("b_slope_s").get<double>(), c.at("j01_s").get<double>(),
                  c.at("j12_s").get<double>()};

    const json& e = root.at("elements");
    r.elements.c_res = e.at("c_res_f").get<double>();
    r.elements.l_res = e.at("l_res_h").get<double>();
    r.elements.l_io = e.at("l_io_h").get<double>();
    r.elements.l_inter = e.at("l_inter_h").get<double>();
    r.elements.j_ladder = e.at("j_ladder_s").get<std::vector<double>>();

    r.netlist = netlist_from_json(root.at("netlist"));

    for (const json& b : root.at("bands")) {
        r.bands.push_back({b.at("f_center_hz").get<double>(),
                           b.at("il_db").get<double>(),
                           b.at("il_min_db").get<double>(),
                           b.at("rl_min_db").get<double>(),
                           b.at("f_lo_hz").get<double>(),
                           b.at("f_hi_hz").get<double>(), b.at("fbw").get<double>()});
    }

    const json& l = root.at("microstrip_line");
    r.line = {l.at("w_m").get<double>(), l.at("z0_ohm").get<double>(),
              l.at("eps_eff").get<double>(), l.at("lambda_g_m").get<double>(),
              l.at("f_hz").get<double>()};

    const json& u = root.at("u_shape");
    r.geometry = {u.at("total_length_m").get<double>(),
                  u.at("base_len_m").get<double>(),
                  u.at("arm_len_m").get<double>(),
                  u.at("trace_width_m").get<double>(),
                  u.at("bbox_w_m").get<double>(),
                  u.at("bbox_h_m").get<double>()};

    r.esize_w = root.at("electrical_size").at("w_lambda").get<double>();
    r.esize_h = root.at("electrical_size").at("h_lambda").get<double>();
    return r;
}

void write_report(const DesignReport& report, const std::filesystem::path& path) {
    detail::write_file_atomic(path, serialize_report(report));
}

DesignReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open report " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_report(buf.str());
}

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const pipeline_error&) {
        throw;
    } catch (const std::exception& e) {
        throw pipeline_error(name, e.what());
    }
}

} // namespace

DesignReport run_pipeline(const DesignConfig& config) {
    DesignReport report;
    report.config = config;

    stage("config", [&] {
        validate_filter_spec(config.filter);
        validate_substrate(config.substrate);
        validate_grid(config.sweep);
    });

    report.proto = stage("prototype", [&] {
        return chebyshev_g_values(config.filter.order, config.filter.ripple_db);
    });

    const SynthesisResult synth = stage("synthesis", [&] {
        return bandpass_elements(config.filter, report.proto);
    });
    report.coupling = synth.coupling;
    report.elements = synth.elements;

    report.netlist = stage("netlist", [&] {
        return config.filter.topology == Topology::DualBand
                   ? build_dual_band_netlist(config.filter, synth.elements)
                   : build_single_band_netlist(config.filter, synth.elements);
    });

    const SParamSweep sweep = stage("sweep", [&] {
        return sweep_sparams(report.netlist, config.sweep);
    });

    report.bands = stage("metrics", [&] {
        return extract_band_metrics(sweep, config.effective_rl_threshold());
    });

    stage("geometry", [&] {
        report.line = synthesize_width(config.ms_z0_target_ohm, config.substrate,
                                       config.filter.f0_hz);
        report.geometry = u_fold_geometry(report.line, config.filter.f0_hz,
                                          config.base_fraction);
        const auto size = electrical_size(report.geometry.bbox_w_m,
                                          report.geometry.bbox_h_m,
                                          report.line.lambda_g_m);
        report.esize_w = size.first;
        report.esize_h = size.second;
        return 0;
    });

    // all numeric work is done; only now touch the filesystem
    stage("write", [&] {
        if (config.outputs.report_path) {
            write_report(report, *config.outputs.report_path);
        }
        if (config.outputs.touchstone_path) {
            write_touchstone(sweep, *config.outputs.touchstone_path);
        }
        if (config.outputs.csv_path) {
            write_csv(sweep, *config.outputs.csv_path);
        }
        return 0;
    });

    return report;
}

} // namespace rfkit
