#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eemrio/mrio.hpp"
#include "eemrio/payback.hpp"
#include "eemrio/satellite.hpp"
#include "eemrio/windcost.hpp"

namespace eemrio {

/// Scenario configuration, loaded from a JSON file. Relative paths resolve
/// against the config file's directory.
struct ScenarioConfig {
    std::filesystem::path regions;
    std::filesystem::path sectors;
    std::optional<std::filesystem::path> use;     // with supply: derive A via Model D
    std::optional<std::filesystem::path> supply;
    std::optional<std::filesystem::path> a_matrix;  // direct ingestion, bypasses SUT
    std::optional<std::filesystem::path> total_output;  // required with a_matrix
    std::optional<std::filesystem::path> national_inventory;
    std::optional<std::filesystem::path> facilities;
    std::optional<std::filesystem::path> proxy;  // absent: output-share fallback
    std::optional<std::filesystem::path> concordance;
    std::filesystem::path cost_params;
    std::filesystem::path cost_naics_map;
    std::optional<std::filesystem::path> weather;
    OperabilityLimits operability;
    std::optional<std::filesystem::path> grid_trajectory;
    std::optional<std::filesystem::path> scc;
    std::optional<std::filesystem::path> payback_inputs;
    std::vector<ProjectSpec> projects;
    std::filesystem::path output_dir = "out";
    double lifetime_years = 25.0;
    double wind_intensity_t_mwh = 0.0;
    std::size_t top_k = 10;

    static ScenarioConfig load(const std::filesystem::path& path);
};

struct ProjectResult {
    std::string name;
    CostBreakdown costs;
    ImpactVector impact_installation;
    ImpactVector impact_turbines;
    EmissionsImpact emissions_installation;
    EmissionsImpact emissions_turbines;
    double cost_musd = 0.0;
    double impact_musd = 0.0;
    double emissions_t = 0.0;
    double in_state_musd = 0.0;
    double out_state_musd = 0.0;
    std::optional<double> epb_years;
    std::optional<double> cpb_months;
    std::vector<std::pair<Sector, double>> top_sectors_econ;
    std::vector<std::pair<Sector, double>> top_sectors_emis;
};

struct ScenarioResult {
    IndexPtr index;
    std::vector<ProjectResult> projects;
};

/// Full pipeline: taxonomy -> A -> L -> satellite -> emissions factors ->
/// per-project costs, shocks, impacts, splits, rankings, paybacks.
/// L is factorized once and reused across projects. All results are computed
/// before anything is written, so a failure leaves no partial output.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Writes the result artifact set under config.output_dir: per-project cost,
/// impact, emissions and choropleth CSVs plus a cross-project summary.csv.
void write_scenario_outputs(const ScenarioConfig& config, const ScenarioResult& result);

/// One row per region with its block sum; the home region is dropped when
/// exclude_home is set.
void emit_choropleth_csv(const std::filesystem::path& path, const Eigen::VectorXd& values,
                         const RegionSectorIndex& index, const std::string& home_region,
                         bool exclude_home, const std::string& value_header);

/// Checks every input invariant (file presence, SUT balance, satellite
/// preconditions, taxonomy references) without running the pipeline.
/// Empty result means the configuration is clean.
std::vector<std::string> validate_inputs(const ScenarioConfig& config);

}  // namespace eemrio
