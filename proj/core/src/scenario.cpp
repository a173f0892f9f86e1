#include "eemrio/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::optional<std::filesystem::path> opt_path(const json& j, const char* key,
                                              const std::filesystem::path& base) {
    if (!j.contains(key)) {
        return std::nullopt;
    }
    return resolve(base, j.at(key).get<std::string>());
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config '" + path.string() + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("config parse error: " + std::string(e.what()));
    }
    const auto base = path.parent_path();

    ScenarioConfig c;
    try {
        c.regions = resolve(base, j.at("regions").get<std::string>());
        c.sectors = resolve(base, j.at("sectors").get<std::string>());
        c.use = opt_path(j, "use", base);
        c.supply = opt_path(j, "supply", base);
        c.a_matrix = opt_path(j, "a_matrix", base);
        c.total_output = opt_path(j, "total_output", base);
        c.national_inventory = opt_path(j, "national_inventory", base);
        c.facilities = opt_path(j, "facilities", base);
        c.proxy = opt_path(j, "proxy", base);
        c.concordance = opt_path(j, "concordance", base);
        c.cost_params = resolve(base, j.at("cost_params").get<std::string>());
        c.cost_naics_map = resolve(base, j.at("cost_naics_map").get<std::string>());
        c.weather = opt_path(j, "weather", base);
        if (j.contains("operability")) {
            c.operability.max_wind_ms = j["operability"].value("max_wind_ms", 15.0);
            c.operability.max_wave_m = j["operability"].value("max_wave_m", 2.0);
        }
        c.grid_trajectory = opt_path(j, "grid_trajectory", base);
        c.scc = opt_path(j, "scc", base);
        c.payback_inputs = opt_path(j, "payback_inputs", base);
        if (j.contains("output_dir")) {
            c.output_dir = resolve(base, j["output_dir"].get<std::string>());
        } else {
            c.output_dir = base / "out";
        }
        c.lifetime_years = j.value("lifetime_years", 25.0);
        c.wind_intensity_t_mwh = j.value("wind_intensity_t_mwh", 0.0);
        c.top_k = j.value("top_k", std::size_t{10});

        for (const auto& pj : j.at("projects")) {
            c.projects.push_back(ProjectSpec::make(
                pj.at("name").get<std::string>(), pj.at("state").get<std::string>(),
                pj.at("capacity_mw").get<double>(), pj.at("turbine_rating_mw").get<double>(),
                pj.at("depth_m").get<double>(), pj.at("distance_km").get<double>(),
                pj.at("windspeed_ms").get<double>()));
        }
    } catch (const json::exception& e) {
        throw DataError("config error: " + std::string(e.what()));
    }
    if (c.projects.empty()) {
        throw DataError("config must define at least one project");
    }
    if (!c.a_matrix && !(c.use && c.supply)) {
        throw DataError("config needs either use+supply or a_matrix");
    }
    return c;
}

namespace {

struct Model {
    IndexPtr index;
    TotalRequirements total_requirements;
    Eigen::VectorXd total_output;
    std::optional<EmissionsFactors> factors;
    CostParameters cost_params;
    std::map<CostCategory, std::string> naics_map;
    std::optional<WeatherSeries> weather;
    GridTrajectory grid;
    SccSchedule scc;
    std::map<std::string, PaybackProjectInputs> payback;
};

Model build_model(const ScenarioConfig& config) {
    Model m;
    m.index = std::make_shared<RegionSectorIndex>(load_regions(config.regions),
                                                  load_sectors(config.sectors));

    DirectRequirements a;
    if (config.a_matrix) {
        a = DirectRequirements{load_matrix_csv(*config.a_matrix, *m.index), m.index};
        if (config.total_output) {
            m.total_output = load_vector_csv(*config.total_output, *m.index);
        }
    } else {
        auto sut = load_sut(*config.use, *config.supply, m.index);
        m.total_output = sut.industry_output;
        a = derive_direct_requirements(sut);
    }
    m.total_requirements = leontief_inverse(a, Direct{});

    if (config.national_inventory) {
        if (m.total_output.size() == 0) {
            throw DataError("satellite stage needs total_output (or a SUT) for emissions factors");
        }
        auto inventory = load_national_inventory(*config.national_inventory);
        if (config.concordance) {
            auto conc = load_concordance(*config.concordance);
            inventory = conc.apply(inventory.emissions_by_sector);
        }
        std::vector<FacilityRecord> facilities;
        if (config.facilities) {
            facilities = load_facilities(*config.facilities);
        }
        ProxyShares proxy = config.proxy ? load_proxy(*config.proxy)
                                         : output_share_proxy(m.total_output, *m.index);
        auto sat = regionalize(inventory, facilities, proxy, m.index);
        m.factors = emissions_factors(sat, m.total_output);
    }

    m.cost_params = load_cost_params(config.cost_params);
    m.naics_map = load_cost_naics_map(config.cost_naics_map);
    if (config.weather) {
        m.weather = load_weather(*config.weather);
    }
    m.grid = config.grid_trajectory ? load_grid_trajectory(*config.grid_trajectory)
                                    : GridTrajectory::constant(0.0);
    if (config.scc) {
        m.scc = load_scc(*config.scc);
    }
    if (config.payback_inputs) {
        for (auto& p : load_payback_inputs(*config.payback_inputs)) {
            m.payback[p.project] = std::move(p);
        }
    }
    return m;
}

ProjectResult evaluate_project(const ScenarioConfig& config, const Model& m,
                               const ProjectSpec& spec) {
    ProjectResult res;
    res.name = spec.name;
    res.costs = estimate_costs(spec, m.cost_params, m.weather, config.operability);

    auto [install_shock, turbine_shock] =
        build_shocks(spec, res.costs, m.naics_map, m.index);
    res.impact_installation = impact(m.total_requirements, install_shock);
    res.impact_turbines = impact(m.total_requirements, turbine_shock);

    Eigen::VectorXd combined = res.impact_installation.values + res.impact_turbines.values;
    ImpactVector combined_impact{combined, m.index};

    res.cost_musd = res.costs.total();
    res.impact_musd = combined.sum();
    auto [in_state, out_state] = split_in_state(combined_impact, spec.state);
    res.in_state_musd = in_state;
    res.out_state_musd = out_state;
    res.top_sectors_econ = top_sectors(combined_impact, config.top_k);

    if (m.factors) {
        res.emissions_installation = emissions_impact(*m.factors, res.impact_installation);
        res.emissions_turbines = emissions_impact(*m.factors, res.impact_turbines);
        Eigen::VectorXd emis =
            res.emissions_installation.values + res.emissions_turbines.values;
        res.emissions_t = emis.sum();
        res.top_sectors_emis = top_sectors(ImpactVector{emis, m.index}, config.top_k);
    }

    auto pit = m.payback.find(spec.name);
    if (pit != m.payback.end()) {
        const auto& pin = pit->second;
        res.epb_years = economic_payback(pin.economic);
        CarbonInputs ci;
        ci.lifetime_emissions_t = pin.lifetime_emissions_t;
        ci.capacity_mw = pin.capacity_mw;
        ci.capacity_factor = pin.capacity_factor;
        ci.lifetime_years = config.lifetime_years;
        ci.wind_intensity_t_mwh = config.wind_intensity_t_mwh;
        ci.grid = m.grid;
        res.cpb_months = carbon_payback(ci).months;
    }
    return res;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
    Model m = build_model(config);
    ScenarioResult result;
    result.index = m.index;
    result.projects.reserve(config.projects.size());
    for (const auto& spec : config.projects) {
        result.projects.push_back(evaluate_project(config, m, spec));
    }
    return result;
}

void emit_choropleth_csv(const std::filesystem::path& path, const Eigen::VectorXd& values,
                         const RegionSectorIndex& index, const std::string& home_region,
                         bool exclude_home, const std::string& value_header) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "region," << value_header << '\n';
    for (std::size_t r = 0; r < index.n_regions(); ++r) {
        const auto& code = index.regions()[r].code;
        if (exclude_home && code == home_region) {
            continue;
        }
        double sum = 0.0;
        for (std::size_t s = 0; s < index.n_sectors(); ++s) {
            sum += values[static_cast<Eigen::Index>(index.flatten(r, s))];
        }
        out << code << ',' << csv::format_sig(sum) << '\n';
    }
}

namespace {

void write_top_sectors_csv(const std::filesystem::path& path,
                           const std::vector<std::pair<Sector, double>>& rows,
                           const std::string& value_header) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "sector,name," << value_header << '\n';
    for (const auto& [sector, value] : rows) {
        out << sector.naics << ',' << sector.name << ',' << csv::format_sig(value) << '\n';
    }
}

const ProjectSpec& spec_for(const ScenarioConfig& config, const std::string& name) {
    for (const auto& s : config.projects) {
        if (s.name == name) {
            return s;
        }
    }
    throw Error("no spec for project '" + name + "'");
}

}  // namespace

void write_scenario_outputs(const ScenarioConfig& config, const ScenarioResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    const auto& index = *result.index;

    auto naics_map = load_cost_naics_map(config.cost_naics_map);

    std::ofstream summary(config.output_dir / "summary.csv");
    if (!summary) {
        throw DataError("cannot write summary.csv");
    }
    summary << "project,cost_musd,impact_musd,emissions_mt,in_state_musd,out_state_musd,"
               "epb_years,cpb_months\n";

    for (const auto& p : result.projects) {
        const auto& spec = spec_for(config, p.name);
        fs::path dir = config.output_dir / p.name;
        fs::create_directories(dir);

        write_costs_csv(dir / "costs.csv", p.costs, naics_map);
        write_vector_csv(dir / "impact_installation.csv", p.impact_installation.values, index,
                         "value_musd");
        write_vector_csv(dir / "impact_turbines.csv", p.impact_turbines.values, index,
                         "value_musd");
        Eigen::VectorXd combined = p.impact_installation.values + p.impact_turbines.values;
        write_vector_csv(dir / "impact.csv", combined, index, "value_musd");
        emit_choropleth_csv(dir / "choropleth_economic.csv", combined, index, spec.state, true,
                            "value_musd");
        write_top_sectors_csv(dir / "top_sectors_economic.csv", p.top_sectors_econ,
                              "value_musd");

        if (p.emissions_installation.values.size() > 0) {
            write_vector_csv(dir / "emissions_installation.csv",
                             p.emissions_installation.values, index, "emissions_t");
            write_vector_csv(dir / "emissions_turbines.csv", p.emissions_turbines.values,
                             index, "emissions_t");
            Eigen::VectorXd emis =
                p.emissions_installation.values + p.emissions_turbines.values;
            write_vector_csv(dir / "emissions.csv", emis, index, "emissions_t");
            emit_choropleth_csv(dir / "choropleth_emissions.csv", emis, index, spec.state,
                                true, "emissions_t");
            write_top_sectors_csv(dir / "top_sectors_emissions.csv", p.top_sectors_emis,
                                  "emissions_t");
        }

        summary << p.name << ',' << csv::format_sig(p.cost_musd) << ','
                << csv::format_sig(p.impact_musd) << ',' << csv::format_sig(p.emissions_t / 1e6)
                << ',' << csv::format_sig(p.in_state_musd) << ','
                << csv::format_sig(p.out_state_musd) << ','
                << (p.epb_years ? csv::format_sig(*p.epb_years) : "") << ','
                << (p.cpb_months ? csv::format_sig(*p.cpb_months) : "") << '\n';
    }
}

std::vector<std::string> validate_inputs(const ScenarioConfig& config) {
    std::vector<std::string> findings;
    auto note = [&](const std::string& msg) { findings.push_back(msg); };

    IndexPtr index;
    try {
        index = std::make_shared<RegionSectorIndex>(load_regions(config.regions),
                                                    load_sectors(config.sectors));
    } catch (const Error& e) {
        note(std::string("taxonomy: ") + e.what());
        return findings;
    }

    Eigen::VectorXd total_output;
    if (config.a_matrix) {
        try {
            DirectRequirements a{load_matrix_csv(*config.a_matrix, *index), index};
            if ((a.a.array() < 0.0).any()) {
                note("a_matrix: negative coefficients");
            }
        } catch (const Error& e) {
            note(std::string("a_matrix: ") + e.what());
        }
        if (config.total_output) {
            try {
                total_output = load_vector_csv(*config.total_output, *index);
            } catch (const Error& e) {
                note(std::string("total_output: ") + e.what());
            }
        }
    } else if (config.use && config.supply) {
        try {
            auto sut = load_sut(*config.use, *config.supply, index);
            total_output = sut.industry_output;
        } catch (const Error& e) {
            note(std::string("supply/use: ") + e.what());
        }
    } else {
        note("config: neither use+supply nor a_matrix given");
    }

    if (config.national_inventory) {
        try {
            auto inventory = load_national_inventory(*config.national_inventory);
            for (const auto& [code, v] : inventory.emissions_by_sector) {
                if (!index->find_sector(code) && !config.concordance) {
                    note("national inventory: unknown sector '" + code + "'");
                }
                if (v < 0.0) {
                    note("national inventory: negative emissions for '" + code + "'");
                }
            }
        } catch (const Error& e) {
            note(std::string("national inventory: ") + e.what());
        }
        if (config.facilities) {
            try {
                for (const auto& f : load_facilities(*config.facilities)) {
                    if (!index->find_region(f.region)) {
                        note("facilities: unknown region '" + f.region + "'");
                    }
                    if (!index->find_sector(f.sector)) {
                        note("facilities: unknown sector '" + f.sector + "'");
                    }
                    if (f.emissions < 0.0) {
                        note("facilities: negative emissions in '" + f.region + "'");
                    }
                }
            } catch (const Error& e) {
                note(std::string("facilities: ") + e.what());
            }
        }
        if (config.proxy) {
            try {
                auto proxy = load_proxy(*config.proxy);
                for (const auto& [sector, shares] : proxy.shares) {
                    if (!index->find_sector(sector)) {
                        note("proxy: unknown sector '" + sector + "'");
                    }
                    double sum = 0.0;
                    for (const auto& [region, share] : shares) {
                        if (!index->find_region(region)) {
                            note("proxy: unknown region '" + region + "'");
                        }
                        sum += share;
                    }
                    if (std::abs(sum - 1.0) > 1e-9) {
                        note("proxy: shares for sector '" + sector + "' sum to " +
                             std::to_string(sum));
                    }
                }
            } catch (const Error& e) {
                note(std::string("proxy: ") + e.what());
            }
        }
    }

    try {
        load_cost_params(config.cost_params);
    } catch (const Error& e) {
        note(std::string("cost params: ") + e.what());
    }
    try {
        auto map = load_cost_naics_map(config.cost_naics_map);
        for (CostCategory cat : all_cost_categories()) {
            if (!map.count(cat)) {
                note("cost map: no NAICS code for category '" + to_string(cat) + "'");
            }
        }
    } catch (const Error& e) {
        note(std::string("cost map: ") + e.what());
    }

    for (const auto& p : config.projects) {
        if (!index->find_region(p.state)) {
            note("project '" + p.name + "': unknown state '" + p.state + "'");
        }
    }

    if (config.grid_trajectory) {
        try {
            load_grid_trajectory(*config.grid_trajectory);
        } catch (const Error& e) {
            note(std::string("grid trajectory: ") + e.what());
        }
    }
    if (config.payback_inputs) {
        try {
            load_payback_inputs(*config.payback_inputs);
        } catch (const Error& e) {
            note(std::string("payback inputs: ") + e.what());
        }
    }
    return findings;
}

}  // namespace eemrio
