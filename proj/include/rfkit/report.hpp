#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rfkit/microstrip.hpp"
#include "rfkit/netsim.hpp"
#include "rfkit/synthesis.hpp"

namespace rfkit {

inline constexpr const char* kToolkitVersion = "rfkit 0.1.0";

struct OutputPaths {
    std::optional<std::string> report_path;
    std::optional<std::string> touchstone_path;
    std::optional<std::string> csv_path;
};

/// Fully validated designer configuration. Parsing rejects unknown keys by
/// name and enforces every owning type's invariants before any numeric work.
struct DesignConfig {
    FilterSpec filter;
    SubstrateSpec substrate{10.7, 1.27e-3, 0.0023, 35e-6, 5.8e7};
    SweepGrid sweep{1.2e9, 1.6e9, 4001, GridSpacing::Linear};
    std::optional<double> rl_threshold_db;  // default 20 single / 18 dual
    double ms_z0_target_ohm = 50.0;
    double base_fraction = 1.0 / 3.0;
    OutputPaths outputs;

    [[nodiscard]] double effective_rl_threshold() const {
        if (rl_threshold_db) return *rl_threshold_db;
        return filter.topology == Topology::DualBand ? 18.0 : 20.0;
    }
};

DesignConfig parse_config(const std::string& json_text);
DesignConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const DesignConfig& config);

struct DesignReport {
    DesignConfig config;  // echo of inputs
    PrototypeCoefficients proto;
    CouplingParams coupling{};
    BandpassElements elements{};
    Netlist netlist;
    std::vector<BandMetrics> bands;
    MicrostripLine line{};
    UShapeGeometry geometry{};
    double esize_w = 0.0;  // bbox width in guided wavelengths
    double esize_h = 0.0;
    std::string version = kToolkitVersion;
};

/// Stage-tagged pipeline failure; what() reads "stage: cause".
class pipeline_error : public std::runtime_error {
public:
    pipeline_error(std::string stage, const std::string& cause)
        : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// prototype -> synthesis -> netlist -> sweep -> metrics -> geometry, then
/// writes whatever outputs the config requests. All computation completes
/// before the first byte is written, and each file lands via a temp-file
/// rename, so failures leave no partial outputs.
DesignReport run_pipeline(const DesignConfig& config);

std::string serialize_report(const DesignReport& report);
DesignReport parse_report(const std::string& json_text);
void write_report(const DesignReport& report, const std::filesystem::path& path);
DesignReport read_report(const std::filesystem::path& path);

/// Element/port list as a standalone JSON document (same shape as the
/// `netlist` object inside the design report).
std::string serialize_netlist(const Netlist& netlist);

} // namespace rfkit
