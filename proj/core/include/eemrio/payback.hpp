#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace eemrio {

/// Inputs to the break-even calculation. Monetary values in million USD,
/// energy in MWh, price in USD per MWh.
struct EconomicInputs {
    double initial_cost_musd = 0.0;        // C_i
    double annual_energy_mwh = 0.0;        // AEP
    double electricity_price_usd_mwh = 0.0;  // P_s
    double annual_op_cost_musd = 0.0;      // C_op
};

/// Grid carbon intensity over the plant lifetime: (year offset from
/// commissioning, tonnes CO2-eq per MWh). A single point means a constant
/// intensity; more points are linearly interpolated.
struct GridTrajectory {
    std::vector<std::pair<double, double>> points;

    void validate() const;
    double intensity_at(double year) const;
    static GridTrajectory constant(double intensity);
};

struct CarbonInputs {
    double lifetime_emissions_t = 0.0;   // construction-phase total, tonnes CO2-eq
    double capacity_mw = 0.0;
    double capacity_factor = 0.51;
    double lifetime_years = 25.0;
    double wind_intensity_t_mwh = 0.0;   // lifecycle intensity of the wind plant
    GridTrajectory grid;
};

struct CarbonPaybackResult {
    double months = 0.0;
    double annual_energy_mwh = 0.0;
    double offset_energy_mwh = 0.0;      // constant-trajectory closed form only
};

/// Social cost of carbon schedule: USD per tonne by year offset (0 =
/// installation year). Years beyond the last entry reuse the last value.
struct SccSchedule {
    std::map<int, double> usd_per_tonne;

    double at(int year) const;
};

/// C_i / (AEP * P_s - C_op), in years. Throws NumericError when net revenue
/// is not positive.
double economic_payback(const EconomicInputs& in);

/// Months of operation needed for avoided grid emissions to equal the
/// construction-phase emissions. A constant trajectory uses the closed form;
/// a time-varying one accumulates avoided emissions month by month with
/// linear interpolation of the grid intensity. Throws NumericError if the
/// grid decarbonizes below the plant's own intensity before the offset
/// completes.
CarbonPaybackResult carbon_payback(const CarbonInputs& in);

/// Economic payback with the monetized carbon externality added to the
/// numerator: installation-year SCC on installation emissions plus one SCC
/// term per operating year.
double scc_adjusted_payback(const EconomicInputs& in, double install_emissions_t,
                            double annual_op_emissions_t, const SccSchedule& scc,
                            int lifetime_years = 25);

GridTrajectory load_grid_trajectory(const std::filesystem::path& path);
SccSchedule load_scc(const std::filesystem::path& path);

/// One row of `payback_inputs.csv`.
struct PaybackProjectInputs {
    std::string project;
    EconomicInputs economic;
    double lifetime_emissions_t = 0.0;
    double capacity_mw = 0.0;
    double capacity_factor = 0.51;
};

std::vector<PaybackProjectInputs> load_payback_inputs(const std::filesystem::path& path);

}  // namespace eemrio
