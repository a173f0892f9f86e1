#include "eemrio/windcost.hpp"

#include <cmath>
#include <fstream>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

namespace {

struct CategoryName {
    CostCategory cat;
    const char* name;
};

constexpr CategoryName kCategoryNames[] = {
    {CostCategory::ArraySystem, "Array System"},
    {CostCategory::ExportSystem, "Export System"},
    {CostCategory::OffshoreSubstation, "Offshore Substation"},
    {CostCategory::ScourProtection, "Scour Protection"},
    {CostCategory::Substructure, "Substructure"},
    {CostCategory::ArraySystemInstallation, "Array System Installation"},
    {CostCategory::ExportSystemInstallation, "Export System Installation"},
    {CostCategory::OffshoreSubstationInstallation, "Offshore Substation Installation"},
    {CostCategory::ScourProtectionInstallation, "Scour Protection Installation"},
    {CostCategory::SubstructureInstallation, "Substructure Installation"},
    {CostCategory::TurbineInstallation, "Turbine Installation"},
    {CostCategory::Turbines, "Turbines"},
    {CostCategory::Insurance, "Insurance"},
    {CostCategory::Financing, "Financing"},
    {CostCategory::Contingency, "Contingency"},
    {CostCategory::Commissioning, "Commissioning"},
    {CostCategory::Decommissioning, "Decommissioning"},
    {CostCategory::SiteAuction, "Site Auction"},
    {CostCategory::SiteAssessment, "Site Assessment"},
    {CostCategory::ConstructionPlan, "Construction Plan"},
    {CostCategory::InstallationPlan, "Installation Plan"},
};

}  // namespace

const std::vector<CostCategory>& all_cost_categories() {
    static const std::vector<CostCategory> cats = [] {
        std::vector<CostCategory> v;
        for (const auto& e : kCategoryNames) {
            v.push_back(e.cat);
        }
        return v;
    }();
    return cats;
}

std::string to_string(CostCategory c) {
    for (const auto& e : kCategoryNames) {
        if (e.cat == c) {
            return e.name;
        }
    }
    return "?";
}

CostCategory cost_category_from_string(const std::string& name) {
    for (const auto& e : kCategoryNames) {
        if (name == e.name) {
            return e.cat;
        }
    }
    throw DataError("unknown cost category '" + name + "'");
}

bool is_installation_category(CostCategory c) {
    switch (c) {
        case CostCategory::ArraySystemInstallation:
        case CostCategory::ExportSystemInstallation:
        case CostCategory::OffshoreSubstationInstallation:
        case CostCategory::ScourProtectionInstallation:
        case CostCategory::SubstructureInstallation:
        case CostCategory::TurbineInstallation:
            return true;
        default:
            return false;
    }
}

ProjectSpec ProjectSpec::make(std::string name, std::string state, double capacity_mw,
                              double turbine_rating_mw, double depth_m, double distance_km,
                              double windspeed_ms) {
    ProjectSpec s;
    s.name = std::move(name);
    s.state = std::move(state);
    s.capacity_mw = capacity_mw;
    s.turbine_rating_mw = turbine_rating_mw;
    s.depth_m = depth_m;
    s.distance_to_landfall_km = distance_km;
    s.mean_windspeed_ms = windspeed_ms;
    if (turbine_rating_mw > 0.0) {
        s.n_turbines = static_cast<int>(std::ceil(capacity_mw / turbine_rating_mw));
    }
    s.validate();
    return s;
}

void ProjectSpec::validate() const {
    if (capacity_mw <= 0.0 || turbine_rating_mw <= 0.0 || depth_m <= 0.0 ||
        distance_to_landfall_km <= 0.0 || mean_windspeed_ms <= 0.0) {
        throw DataError("project '" + name + "': all physical fields must be positive");
    }
    int expected = static_cast<int>(std::ceil(capacity_mw / turbine_rating_mw));
    if (n_turbines != expected) {
        throw DataError("project '" + name + "': n_turbines " + std::to_string(n_turbines) +
                        " != ceil(capacity/rating) = " + std::to_string(expected));
    }
}

void CostParameters::validate() const {
    const double rates[] = {
        turbine_price_usd_per_kw,      substructure_base_musd_per_turbine,
        substructure_musd_per_turbine_per_m, array_cable_musd_per_turbine,
        export_cable_musd_per_km,      substation_musd_per_mw,
        scour_musd_per_turbine,        turbine_install_musd_per_turbine,
        substructure_install_musd_per_turbine, array_install_musd_per_turbine,
        export_install_musd_per_km,    substation_install_musd_each,
        scour_install_musd_per_turbine, site_auction_musd,
        site_assessment_musd,          construction_plan_musd,
        installation_plan_musd,
    };
    for (double r : rates) {
        if (r < 0.0 || !std::isfinite(r)) {
            throw DataError("cost parameter rates must be nonnegative and finite");
        }
    }
    if (export_cable_capacity_mw <= 0.0) {
        throw DataError("export_cable_capacity_mw must be positive");
    }
    const double fracs[] = {insurance_fraction, financing_fraction, contingency_fraction,
                            commissioning_fraction, decommissioning_fraction};
    for (double f : fracs) {
        if (f < 0.0 || f >= 1.0) {
            throw DataError("soft-cost fractions must lie in [0, 1)");
        }
    }
}

double CostBreakdown::total() const {
    double t = 0.0;
    for (const auto& [cat, v] : values) {
        t += v;
    }
    return t;
}

double CostBreakdown::value(CostCategory c) const {
    auto it = values.find(c);
    return it == values.end() ? 0.0 : it->second;
}

double weather_delay_multiplier(const WeatherSeries& weather, const OperabilityLimits& limits) {
    if (weather.wind_ms.size() != weather.wave_m.size() || weather.wind_ms.empty()) {
        throw DataError("weather series must be nonempty with matching wind/wave lengths");
    }
    std::size_t operable = 0;
    for (std::size_t i = 0; i < weather.wind_ms.size(); ++i) {
        if (weather.wind_ms[i] <= limits.max_wind_ms && weather.wave_m[i] <= limits.max_wave_m) {
            ++operable;
        }
    }
    if (operable == 0) {
        throw NumericError("no operable weather window within limits");
    }
    return static_cast<double>(weather.wind_ms.size()) / static_cast<double>(operable);
}

CostBreakdown estimate_costs(const ProjectSpec& spec, const CostParameters& params,
                             const std::optional<WeatherSeries>& weather,
                             const OperabilityLimits& limits) {
    params.validate();
    if (spec.n_turbines < 0) {
        throw DataError("negative turbine count");
    }
    const double nt = static_cast<double>(spec.n_turbines);
    const double cables = std::ceil(spec.capacity_mw / params.export_cable_capacity_mw);
    const double delay = weather ? weather_delay_multiplier(*weather, limits) : 1.0;

    CostBreakdown b;
    auto& v = b.values;

    // Capex
    v[CostCategory::Turbines] =
        nt * spec.turbine_rating_mw * 1000.0 * params.turbine_price_usd_per_kw / 1e6;
    v[CostCategory::Substructure] =
        nt * (params.substructure_base_musd_per_turbine +
              params.substructure_musd_per_turbine_per_m * spec.depth_m);
    v[CostCategory::ArraySystem] = params.array_cable_musd_per_turbine * nt;
    v[CostCategory::ExportSystem] =
        params.export_cable_musd_per_km * spec.distance_to_landfall_km * cables;
    v[CostCategory::OffshoreSubstation] = params.substation_musd_per_mw * spec.capacity_mw;
    v[CostCategory::ScourProtection] = params.scour_musd_per_turbine * nt;

    // Installation, weather-delayed
    v[CostCategory::TurbineInstallation] = delay * params.turbine_install_musd_per_turbine * nt;
    v[CostCategory::SubstructureInstallation] =
        delay * params.substructure_install_musd_per_turbine * nt;
    v[CostCategory::ArraySystemInstallation] = delay * params.array_install_musd_per_turbine * nt;
    v[CostCategory::ExportSystemInstallation] =
        delay * params.export_install_musd_per_km * spec.distance_to_landfall_km * cables;
    v[CostCategory::OffshoreSubstationInstallation] =
        delay * params.substation_install_musd_each * cables;
    v[CostCategory::ScourProtectionInstallation] =
        delay * params.scour_install_musd_per_turbine * nt;

    // Soft costs on the capex subtotal
    const double capex = v[CostCategory::Turbines] + v[CostCategory::Substructure] +
                         v[CostCategory::ArraySystem] + v[CostCategory::ExportSystem] +
                         v[CostCategory::OffshoreSubstation] + v[CostCategory::ScourProtection];
    v[CostCategory::Insurance] = params.insurance_fraction * capex;
    v[CostCategory::Financing] = params.financing_fraction * capex;
    v[CostCategory::Contingency] = params.contingency_fraction * capex;
    v[CostCategory::Commissioning] = params.commissioning_fraction * capex;
    v[CostCategory::Decommissioning] = params.decommissioning_fraction * capex;

    // Development lump sums
    v[CostCategory::SiteAuction] = params.site_auction_musd;
    v[CostCategory::SiteAssessment] = params.site_assessment_musd;
    v[CostCategory::ConstructionPlan] = params.construction_plan_musd;
    v[CostCategory::InstallationPlan] = params.installation_plan_musd;

    return b;
}

namespace {

std::string naics3(const std::string& code) {
    if (code.size() < 3) {
        throw DataError("NAICS code '" + code + "' shorter than 3 digits");
    }
    return code.substr(0, 3);
}

}  // namespace

std::map<std::string, double> map_costs_to_naics(
    const CostBreakdown& costs, const std::map<CostCategory, std::string>& mapping) {
    std::map<std::string, double> out;
    for (const auto& [cat, value] : costs.values) {
        auto it = mapping.find(cat);
        if (it == mapping.end()) {
            throw DataError("no NAICS mapping for cost category '" + to_string(cat) + "'");
        }
        out[naics3(it->second)] += value;
    }
    return out;
}

std::pair<FinalDemandShock, FinalDemandShock> build_shocks(
    const ProjectSpec& spec, const CostBreakdown& costs,
    const std::map<CostCategory, std::string>& mapping, IndexPtr index) {
    std::size_t region = index->region_position(spec.state);
    const auto n = static_cast<Eigen::Index>(index->size());
    Eigen::VectorXd install = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd turbines = Eigen::VectorXd::Zero(n);

    for (const auto& [cat, value] : costs.values) {
        auto it = mapping.find(cat);
        if (it == mapping.end()) {
            throw DataError("no NAICS mapping for cost category '" + to_string(cat) + "'");
        }
        std::string sector = naics3(it->second);
        auto s = index->find_sector(sector);
        if (!s) {
            throw DataError("cost category '" + to_string(cat) + "' maps to sector '" + sector +
                            "' absent from the taxonomy");
        }
        auto flat = static_cast<Eigen::Index>(index->flatten(region, *s));
        if (cat == CostCategory::Turbines) {
            turbines[flat] += value;
        } else {
            install[flat] += value;
        }
    }
    return {FinalDemandShock{std::move(install), "installation", index},
            FinalDemandShock{std::move(turbines), "turbines", index}};
}

CostParameters load_cost_params(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cp = t.col("parameter");
    std::size_t cv = t.col("value");
    std::map<std::string, double> kv;
    for (const auto& row : t.rows) {
        kv[row[cp]] = csv::to_double(row[cv], "cost params");
    }
    auto take = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw DataError("cost_params missing parameter '" + std::string(key) + "'");
        }
        return it->second;
    };
    CostParameters p;
    p.turbine_price_usd_per_kw = take("turbine_price_usd_per_kw");
    p.substructure_base_musd_per_turbine = take("substructure_base_musd_per_turbine");
    p.substructure_musd_per_turbine_per_m = take("substructure_musd_per_turbine_per_m");
    p.array_cable_musd_per_turbine = take("array_cable_musd_per_turbine");
    p.export_cable_musd_per_km = take("export_cable_musd_per_km");
    p.export_cable_capacity_mw = take("export_cable_capacity_mw");
    p.substation_musd_per_mw = take("substation_musd_per_mw");
    p.scour_musd_per_turbine = take("scour_musd_per_turbine");
    p.turbine_install_musd_per_turbine = take("turbine_install_musd_per_turbine");
    p.substructure_install_musd_per_turbine = take("substructure_install_musd_per_turbine");
    p.array_install_musd_per_turbine = take("array_install_musd_per_turbine");
    p.export_install_musd_per_km = take("export_install_musd_per_km");
    p.substation_install_musd_each = take("substation_install_musd_each");
    p.scour_install_musd_per_turbine = take("scour_install_musd_per_turbine");
    p.insurance_fraction = take("insurance_fraction");
    p.financing_fraction = take("financing_fraction");
    p.contingency_fraction = take("contingency_fraction");
    p.commissioning_fraction = take("commissioning_fraction");
    p.decommissioning_fraction = take("decommissioning_fraction");
    p.site_auction_musd = take("site_auction_musd");
    p.site_assessment_musd = take("site_assessment_musd");
    p.construction_plan_musd = take("construction_plan_musd");
    p.installation_plan_musd = take("installation_plan_musd");
    p.validate();
    return p;
}

std::map<CostCategory, std::string> load_cost_naics_map(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cc = t.col("category");
    std::size_t cn = t.col("naics");
    std::map<CostCategory, std::string> out;
    for (const auto& row : t.rows) {
        out[cost_category_from_string(row[cc])] = row[cn];
    }
    return out;
}

WeatherSeries load_weather(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cw = t.col("wind_ms");
    std::size_t ch = t.col("wave_m");
    WeatherSeries w;
    w.wind_ms.reserve(t.rows.size());
    w.wave_m.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        double wind = csv::to_double(row[cw], "weather");
        double wave = csv::to_double(row[ch], "weather");
        if (wind < 0.0 || wave < 0.0) {
            throw DataError("negative weather observation");
        }
        w.wind_ms.push_back(wind);
        w.wave_m.push_back(wave);
    }
    return w;
}

void write_costs_csv(const std::filesystem::path& path, const CostBreakdown& costs,
                     const std::map<CostCategory, std::string>& mapping) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "category,naics3,value_musd,shock\n";
    for (CostCategory cat : all_cost_categories()) {
        auto it = costs.values.find(cat);
        if (it == costs.values.end()) {
            continue;
        }
        auto m = mapping.find(cat);
        std::string sector = m == mapping.end() ? "" : naics3(m->second);
        const char* shock = cat == CostCategory::Turbines ? "turbines" : "installation";
        out << to_string(cat) << ',' << sector << ',' << csv::format_sig(it->second) << ','
            << shock << '\n';
    }
}

}  // namespace eemrio
