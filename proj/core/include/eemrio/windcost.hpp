#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eemrio/mrio.hpp"

namespace eemrio {

/// Fixed-bottom offshore wind project design parameters.
struct ProjectSpec {
    std::string name;
    std::string state;          // region code hosting the project
    double capacity_mw = 0.0;
    double turbine_rating_mw = 0.0;
    int n_turbines = 0;         // ceil(capacity / rating)
    double depth_m = 0.0;
    double distance_to_landfall_km = 0.0;
    double mean_windspeed_ms = 0.0;

    /// Fills n_turbines from capacity and rating and checks the physical fields.
    static ProjectSpec make(std::string name, std::string state, double capacity_mw,
                            double turbine_rating_mw, double depth_m, double distance_km,
                            double windspeed_ms);
    void validate() const;
};

/// Balance-of-system cost categories. Order is the canonical CSV output order.
enum class CostCategory {
    ArraySystem,
    ExportSystem,
    OffshoreSubstation,
    ScourProtection,
    Substructure,
    ArraySystemInstallation,
    ExportSystemInstallation,
    OffshoreSubstationInstallation,
    ScourProtectionInstallation,
    SubstructureInstallation,
    TurbineInstallation,
    Turbines,
    Insurance,
    Financing,
    Contingency,
    Commissioning,
    Decommissioning,
    SiteAuction,
    SiteAssessment,
    ConstructionPlan,
    InstallationPlan,
};

const std::vector<CostCategory>& all_cost_categories();
std::string to_string(CostCategory c);
CostCategory cost_category_from_string(const std::string& name);

/// Whether a category is an installation activity subject to weather delay.
bool is_installation_category(CostCategory c);

/// Unit rates and fractions for the parametric cost surrogate. Values ship as
/// fitted data (cost_params.csv); the structure is what scales, the numbers
/// are calibration.
struct CostParameters {
    double turbine_price_usd_per_kw = 0.0;
    double substructure_base_musd_per_turbine = 0.0;
    double substructure_musd_per_turbine_per_m = 0.0;
    double array_cable_musd_per_turbine = 0.0;
    double export_cable_musd_per_km = 0.0;
    double export_cable_capacity_mw = 500.0;  // cables = ceil(capacity / this)
    double substation_musd_per_mw = 0.0;
    double scour_musd_per_turbine = 0.0;
    double turbine_install_musd_per_turbine = 0.0;
    double substructure_install_musd_per_turbine = 0.0;
    double array_install_musd_per_turbine = 0.0;
    double export_install_musd_per_km = 0.0;
    double substation_install_musd_each = 0.0;
    double scour_install_musd_per_turbine = 0.0;
    double insurance_fraction = 0.0;       // of capex subtotal
    double financing_fraction = 0.0;
    double contingency_fraction = 0.0;
    double commissioning_fraction = 0.0;
    double decommissioning_fraction = 0.0;
    double site_auction_musd = 0.0;
    double site_assessment_musd = 0.0;
    double construction_plan_musd = 0.0;
    double installation_plan_musd = 0.0;

    void validate() const;
};

/// Hourly site conditions used to derive the installation weather-delay factor.
struct WeatherSeries {
    std::vector<double> wind_ms;
    std::vector<double> wave_m;
};

struct OperabilityLimits {
    double max_wind_ms = 15.0;
    double max_wave_m = 2.0;
};

struct CostBreakdown {
    std::map<CostCategory, double> values;  // million USD

    double total() const;
    double value(CostCategory c) const;
};

/// Ratio of total hours to hours where both wind and wave are within limits.
/// Throws NumericError if no hour is operable.
double weather_delay_multiplier(const WeatherSeries& weather, const OperabilityLimits& limits);

/// Parametric BOS cost estimate. Installation categories are scaled by the
/// weather-delay multiplier (1 when no weather series is given); soft costs
/// are fractions of the capex subtotal; development costs are lump sums.
CostBreakdown estimate_costs(const ProjectSpec& spec, const CostParameters& params,
                             const std::optional<WeatherSeries>& weather = std::nullopt,
                             const OperabilityLimits& limits = {});

/// Collapses category costs onto 3-digit NAICS sectors. 6-digit codes in the
/// mapping are truncated; the grand total is preserved.
std::map<std::string, double> map_costs_to_naics(
    const CostBreakdown& costs, const std::map<CostCategory, std::string>& mapping);

/// Splits sector costs into the two final-demand shocks: the turbine
/// manufacturing line alone, and everything else, both landing in the
/// project state's sectors.
std::pair<FinalDemandShock, FinalDemandShock> build_shocks(
    const ProjectSpec& spec, const CostBreakdown& costs,
    const std::map<CostCategory, std::string>& mapping, IndexPtr index);

CostParameters load_cost_params(const std::filesystem::path& path);
std::map<CostCategory, std::string> load_cost_naics_map(const std::filesystem::path& path);
WeatherSeries load_weather(const std::filesystem::path& path);

/// `costs.csv`: category,naics3,value_musd,shock.
void write_costs_csv(const std::filesystem::path& path, const CostBreakdown& costs,
                     const std::map<CostCategory, std::string>& mapping);

}  // namespace eemrio
