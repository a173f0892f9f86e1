// eemrio: regional economic and emissions impact engine for offshore wind
// project scenarios. Subcommands run the full pipeline or individual stages;
// all inputs are local CSV files referenced from a JSON config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"
#include "eemrio/mrio.hpp"
#include "eemrio/satellite.hpp"
#include "eemrio/scenario.hpp"

namespace {

int g_verbosity = 1;  // 0 quiet, 1 normal, 2 verbose

void log_info(const std::string& msg) {
    if (g_verbosity >= 1) {
        std::cerr << "eemrio: " << msg << '\n';
    }
}

void log_debug(const std::string& msg) {
    if (g_verbosity >= 2) {
        std::cerr << "eemrio: " << msg << '\n';
    }
}

using namespace eemrio;

ScenarioConfig load_config(const std::string& path, const std::string& out_override,
                           int top_k_override) {
    auto config = ScenarioConfig::load(path);
    if (!out_override.empty()) {
        config.output_dir = out_override;
    }
    if (top_k_override > 0) {
        config.top_k = static_cast<std::size_t>(top_k_override);
    }
    return config;
}

int cmd_validate(const ScenarioConfig& config) {
    auto findings = validate_inputs(config);
    for (const auto& f : findings) {
        std::cout << f << '\n';
    }
    if (findings.empty()) {
        log_info("inputs are clean");
        return 0;
    }
    log_info(std::to_string(findings.size()) + " finding(s)");
    return 1;
}

int cmd_derive_a(const ScenarioConfig& config) {
    if (!config.use || !config.supply) {
        throw DataError("derive-a needs use and supply tables in the config");
    }
    auto index = std::make_shared<RegionSectorIndex>(load_regions(config.regions),
                                                     load_sectors(config.sectors));
    auto sut = load_sut(*config.use, *config.supply, index);
    auto a = derive_direct_requirements(sut);
    std::filesystem::create_directories(config.output_dir);
    write_matrix_csv(config.output_dir / "a_matrix.csv", a.a, *index);
    log_info("wrote " + (config.output_dir / "a_matrix.csv").string());
    return 0;
}

int cmd_satellite(const ScenarioConfig& config) {
    if (!config.national_inventory) {
        throw DataError("satellite needs national_inventory in the config");
    }
    auto index = std::make_shared<RegionSectorIndex>(load_regions(config.regions),
                                                     load_sectors(config.sectors));
    auto inventory = load_national_inventory(*config.national_inventory);
    if (config.concordance) {
        inventory = load_concordance(*config.concordance).apply(inventory.emissions_by_sector);
    }
    std::vector<FacilityRecord> facilities;
    if (config.facilities) {
        facilities = load_facilities(*config.facilities);
    }
    ProxyShares proxy;
    if (config.proxy) {
        proxy = load_proxy(*config.proxy);
    } else {
        Eigen::VectorXd output;
        if (config.total_output) {
            output = load_vector_csv(*config.total_output, *index);
        } else if (config.use && config.supply) {
            output = load_sut(*config.use, *config.supply, index).industry_output;
        } else {
            throw DataError("satellite fallback proxy needs total_output or a SUT");
        }
        proxy = output_share_proxy(output, *index);
    }
    auto sat = regionalize(inventory, facilities, proxy, index);
    std::filesystem::create_directories(config.output_dir);
    write_satellite_csv(config.output_dir / "satellite.csv", sat);
    log_info("wrote " + (config.output_dir / "satellite.csv").string());
    return 0;
}

int cmd_cost(const ScenarioConfig& config) {
    auto params = load_cost_params(config.cost_params);
    auto naics_map = load_cost_naics_map(config.cost_naics_map);
    std::optional<WeatherSeries> weather;
    if (config.weather) {
        weather = load_weather(*config.weather);
    }
    std::filesystem::create_directories(config.output_dir);
    for (const auto& spec : config.projects) {
        auto costs = estimate_costs(spec, params, weather, config.operability);
        auto dir = config.output_dir / spec.name;
        std::filesystem::create_directories(dir);
        write_costs_csv(dir / "costs.csv", costs, naics_map);
        log_info(spec.name + ": total " + csv::format_sig(costs.total()) + " M$");
    }
    return 0;
}

int cmd_payback(const ScenarioConfig& config) {
    if (!config.payback_inputs) {
        throw DataError("payback needs payback_inputs in the config");
    }
    auto inputs = load_payback_inputs(*config.payback_inputs);
    GridTrajectory grid = config.grid_trajectory
                              ? load_grid_trajectory(*config.grid_trajectory)
                              : GridTrajectory::constant(0.0);
    std::filesystem::create_directories(config.output_dir);
    std::ofstream out(config.output_dir / "payback.csv");
    out << "project,epb_years,cpb_months\n";
    for (const auto& p : inputs) {
        double epb = economic_payback(p.economic);
        CarbonInputs ci;
        ci.lifetime_emissions_t = p.lifetime_emissions_t;
        ci.capacity_mw = p.capacity_mw;
        ci.capacity_factor = p.capacity_factor;
        ci.lifetime_years = config.lifetime_years;
        ci.wind_intensity_t_mwh = config.wind_intensity_t_mwh;
        ci.grid = grid;
        double cpb = carbon_payback(ci).months;
        out << p.project << ',' << csv::format_sig(epb) << ',' << csv::format_sig(cpb) << '\n';
        log_info(p.project + ": EPB " + csv::format_sig(epb) + " yr, CPB " +
                 csv::format_sig(cpb) + " mo");
    }
    log_info("wrote " + (config.output_dir / "payback.csv").string());
    return 0;
}

int cmd_run(const ScenarioConfig& config, bool impacts_only) {
    log_debug("building model");
    auto result = run_scenario(config);
    log_debug("writing outputs");
    write_scenario_outputs(config, result);
    for (const auto& p : result.projects) {
        log_info(p.name + ": cost " + csv::format_sig(p.cost_musd) + " M$, impact " +
                 csv::format_sig(p.impact_musd) + " M$");
    }
    if (!impacts_only) {
        std::cout << "results written to " << config.output_dir.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regional economic and emissions impacts of offshore wind projects"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int top_k = 0;
    bool quiet = false;
    bool verbose = false;
    app.add_flag("--quiet", quiet, "suppress progress messages");
    app.add_flag("--verbose", verbose, "extra progress messages");

    struct Sub {
        CLI::App* app;
        std::string name;
    };
    std::vector<Sub> subs;
    const std::pair<const char*, const char*> sub_specs[] = {
        {"validate", "check all configured inputs without running the pipeline"},
        {"derive-a", "derive the direct-requirements matrix from the supply/use tables"},
        {"satellite", "regionalize the national emissions inventory"},
        {"cost", "estimate per-project cost breakdowns"},
        {"impact", "run the pipeline, reporting impacts only"},
        {"payback", "compute economic and carbon payback periods"},
        {"run", "full pipeline: costs, impacts, emissions, paybacks, summaries"},
    };
    for (const auto& [name, desc] : sub_specs) {
        auto* s = app.add_subcommand(name, desc);
        s->add_option("--config", config_path, "scenario config file")->required();
        s->add_option("--out", out_dir, "output directory override");
        s->add_option("--top-k", top_k, "sector ranking depth");
        subs.push_back({s, name});
    }

    CLI11_PARSE(app, argc, argv);
    g_verbosity = quiet ? 0 : (verbose ? 2 : 1);

    std::string cmd;
    for (const auto& s : subs) {
        if (s.app->parsed()) {
            cmd = s.name;
        }
    }

    try {
        auto config = load_config(config_path, out_dir, top_k);
        if (cmd == "validate") {
            return cmd_validate(config);
        }
        if (cmd == "derive-a") {
            return cmd_derive_a(config);
        }
        if (cmd == "satellite") {
            return cmd_satellite(config);
        }
        if (cmd == "cost") {
            return cmd_cost(config);
        }
        if (cmd == "payback") {
            return cmd_payback(config);
        }
        return cmd_run(config, cmd == "impact");
    } catch (const DataError& e) {
        std::cerr << "eemrio: input error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "eemrio: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "eemrio: " << e.what() << '\n';
        return 2;
    }
}
