#include "eemrio/payback.hpp"

#include <cmath>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

namespace {
constexpr double kHoursPerYear = 8760.0;
}

void GridTrajectory::validate() const {
    if (points.empty()) {
        throw DataError("grid trajectory must have at least one point");
    }
    if (points.front().first != 0.0) {
        throw DataError("grid trajectory must start at year offset 0");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second < 0.0) {
            throw DataError("negative grid intensity in trajectory");
        }
        if (i > 0 && points[i].first <= points[i - 1].first) {
            throw DataError("grid trajectory year offsets must be strictly increasing");
        }
    }
}

double GridTrajectory::intensity_at(double year) const {
    if (year <= points.front().first) {
        return points.front().second;
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (year <= points[i].first) {
            double t0 = points[i - 1].first;
            double t1 = points[i].first;
            double frac = (year - t0) / (t1 - t0);
            return points[i - 1].second + frac * (points[i].second - points[i - 1].second);
        }
    }
    return points.back().second;  // hold the last known value
}

GridTrajectory GridTrajectory::constant(double intensity) {
    return GridTrajectory{{{0.0, intensity}}};
}

double SccSchedule::at(int year) const {
    if (usd_per_tonne.empty()) {
        return 0.0;
    }
    auto it = usd_per_tonne.upper_bound(year);
    if (it == usd_per_tonne.begin()) {
        return it->second;
    }
    return std::prev(it)->second;
}

double economic_payback(const EconomicInputs& in) {
    if (in.initial_cost_musd < 0.0 || in.annual_energy_mwh < 0.0 ||
        in.electricity_price_usd_mwh < 0.0 || in.annual_op_cost_musd < 0.0) {
        throw DataError("economic payback inputs must be nonnegative");
    }
    double net_revenue_musd =
        in.annual_energy_mwh * in.electricity_price_usd_mwh / 1e6 - in.annual_op_cost_musd;
    if (net_revenue_musd <= 0.0) {
        throw NumericError("net annual revenue is not positive; payback undefined");
    }
    return in.initial_cost_musd / net_revenue_musd;
}

CarbonPaybackResult carbon_payback(const CarbonInputs& in) {
    if (in.capacity_mw <= 0.0 || in.capacity_factor <= 0.0 || in.capacity_factor > 1.0 ||
        in.lifetime_years <= 0.0 || in.lifetime_emissions_t < 0.0 ||
        in.wind_intensity_t_mwh < 0.0) {
        throw DataError("invalid carbon payback inputs");
    }
    in.grid.validate();

    CarbonPaybackResult res;
    res.annual_energy_mwh = in.capacity_mw * kHoursPerYear * in.capacity_factor;

    if (in.lifetime_emissions_t == 0.0) {
        return res;
    }

    if (in.grid.points.size() == 1) {
        // Constant grid intensity: closed form.
        double avoided_rate = in.grid.points.front().second - in.wind_intensity_t_mwh;
        if (avoided_rate <= 0.0) {
            throw NumericError("grid intensity does not exceed plant intensity; never pays back");
        }
        res.offset_energy_mwh = in.lifetime_emissions_t / avoided_rate;
        res.months = res.offset_energy_mwh / res.annual_energy_mwh * 12.0;
        return res;
    }

    // Time-varying grid: accumulate avoided emissions month by month.
    const double monthly_energy = res.annual_energy_mwh / 12.0;
    const double horizon_months = in.lifetime_years * 12.0;
    double cumulative = 0.0;
    for (int m = 0;; ++m) {
        double mid_year = (static_cast<double>(m) + 0.5) / 12.0;
        double rate = in.grid.intensity_at(mid_year) - in.wind_intensity_t_mwh;
        if (rate <= 0.0) {
            throw NumericError(
                "grid decarbonizes below plant intensity before offset completes");
        }
        double increment = rate * monthly_energy;
        if (cumulative + increment >= in.lifetime_emissions_t) {
            res.months = static_cast<double>(m) +
                         (in.lifetime_emissions_t - cumulative) / increment;
            return res;
        }
        cumulative += increment;
        if (static_cast<double>(m) > horizon_months * 10.0) {
            throw NumericError("emissions not offset within ten lifetimes; never pays back");
        }
    }
}

double scc_adjusted_payback(const EconomicInputs& in, double install_emissions_t,
                            double annual_op_emissions_t, const SccSchedule& scc,
                            int lifetime_years) {
    if (install_emissions_t < 0.0 || annual_op_emissions_t < 0.0) {
        throw DataError("emissions inputs must be nonnegative");
    }
    double scc_musd = scc.at(0) * install_emissions_t / 1e6;
    for (int y = 1; y <= lifetime_years; ++y) {
        scc_musd += scc.at(y) * annual_op_emissions_t / 1e6;
    }
    EconomicInputs adjusted = in;
    adjusted.initial_cost_musd += scc_musd;
    return economic_payback(adjusted);
}

GridTrajectory load_grid_trajectory(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cy = t.col("year_offset");
    std::size_t ci = t.col("intensity_t_per_mwh");
    GridTrajectory g;
    for (const auto& row : t.rows) {
        g.points.emplace_back(csv::to_double(row[cy], "grid trajectory"),
                              csv::to_double(row[ci], "grid trajectory"));
    }
    g.validate();
    return g;
}

SccSchedule load_scc(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cy = t.col("year");
    std::size_t cv = t.col("usd_per_tonne");
    SccSchedule s;
    for (const auto& row : t.rows) {
        s.usd_per_tonne[static_cast<int>(csv::to_double(row[cy], "scc"))] =
            csv::to_double(row[cv], "scc");
    }
    return s;
}

std::vector<PaybackProjectInputs> load_payback_inputs(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cp = t.col("project");
    std::size_t cc = t.col("c_i_musd");
    std::size_t ca = t.col("aep_mwh");
    std::size_t cps = t.col("p_s_usd_mwh");
    std::size_t cop = t.col("c_op_musd");
    std::size_t cem = t.col("em_lifetime_t");
    std::size_t ccap = t.col("capacity_mw");
    std::size_t ccf = t.col("cf");
    std::vector<PaybackProjectInputs> out;
    for (const auto& row : t.rows) {
        PaybackProjectInputs p;
        p.project = row[cp];
        p.economic.initial_cost_musd = csv::to_double(row[cc], "payback inputs");
        p.economic.annual_energy_mwh = csv::to_double(row[ca], "payback inputs");
        p.economic.electricity_price_usd_mwh = csv::to_double(row[cps], "payback inputs");
        p.economic.annual_op_cost_musd = csv::to_double(row[cop], "payback inputs");
        p.lifetime_emissions_t = csv::to_double(row[cem], "payback inputs");
        p.capacity_mw = csv::to_double(row[ccap], "payback inputs");
        p.capacity_factor = csv::to_double(row[ccf], "payback inputs");
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace eemrio
