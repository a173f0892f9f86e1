#include <doctest.h>

#include <limits>

#include "eemrio/errors.hpp"
#include "eemrio/windcost.hpp"

using namespace eemrio;

namespace {

IndexPtr make_index() {
    std::vector<Region> regions{{"VA", ""}, {"MD", ""}};
    std::vector<Sector> sectors{{"237", ""}, {"333", ""}, {"335", ""}};
    return std::make_shared<RegionSectorIndex>(std::move(regions), std::move(sectors));
}

CostParameters toy_params() {
    CostParameters p;
    p.turbine_price_usd_per_kw = 1500.0;
    p.substructure_base_musd_per_turbine = 2.0;
    p.substructure_musd_per_turbine_per_m = 0.02;
    p.array_cable_musd_per_turbine = 1.0;
    p.export_cable_musd_per_km = 0.5;
    p.export_cable_capacity_mw = 500.0;
    p.substation_musd_per_mw = 0.15;
    p.scour_musd_per_turbine = 0.25;
    p.turbine_install_musd_per_turbine = 2.0;
    p.substructure_install_musd_per_turbine = 1.5;
    p.array_install_musd_per_turbine = 0.6;
    p.export_install_musd_per_km = 0.25;
    p.substation_install_musd_each = 10.0;
    p.scour_install_musd_per_turbine = 0.3;
    p.insurance_fraction = 0.01;
    p.financing_fraction = 0.03;
    p.contingency_fraction = 0.03;
    p.commissioning_fraction = 0.01;
    p.decommissioning_fraction = 0.01;
    p.site_auction_musd = 5.0;
    p.site_assessment_musd = 2.0;
    p.construction_plan_musd = 0.5;
    p.installation_plan_musd = 0.25;
    return p;
}

}  // namespace

TEST_CASE("project spec derives turbine count") {
    auto spec = ProjectSpec::make("va", "VA", 2640, 12, 22.5, 43.5, 8.5);
    CHECK(spec.n_turbines == 220);
    CHECK_THROWS_AS(ProjectSpec::make("bad", "VA", -1, 12, 20, 10, 8), DataError);
}

TEST_CASE("weather delay multiplier") {
    SUBCASE("all hours operable") {
        WeatherSeries w{{5, 5, 5, 5}, {1, 1, 1, 1}};
        CHECK(weather_delay_multiplier(w, {}) == doctest::Approx(1.0));
    }
    SUBCASE("half the hours operable") {
        WeatherSeries w{{5, 20, 5, 20}, {1, 1, 1, 1}};
        CHECK(weather_delay_multiplier(w, {}) == doctest::Approx(2.0));
    }
    SUBCASE("alternating synthetic series") {
        WeatherSeries w;
        for (int i = 0; i < 100; ++i) {
            w.wind_ms.push_back(i % 2 == 0 ? 10.0 : 20.0);
            w.wave_m.push_back(i % 2 == 0 ? 1.0 : 3.0);
        }
        CHECK(weather_delay_multiplier(w, {15.0, 2.0}) == doctest::Approx(2.0));
    }
    SUBCASE("no operable window") {
        WeatherSeries w{{20, 20}, {3, 3}};
        CHECK_THROWS_AS(weather_delay_multiplier(w, {}), NumericError);
    }
    SUBCASE("infinite limits give multiplier one") {
        WeatherSeries w{{50, 60}, {10, 12}};
        OperabilityLimits inf{std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
        CHECK(weather_delay_multiplier(w, inf) == doctest::Approx(1.0));
    }
}

TEST_CASE("degenerate zero-turbine spec has zero turbine cost") {
    ProjectSpec spec;  // bypasses make() and its invariant on purpose
    spec.name = "degenerate";
    spec.state = "VA";
    spec.capacity_mw = 1.0;
    spec.turbine_rating_mw = 12.0;
    spec.n_turbines = 0;
    spec.depth_m = 20.0;
    spec.distance_to_landfall_km = 10.0;
    auto costs = estimate_costs(spec, toy_params());
    CHECK(costs.value(CostCategory::Turbines) == 0.0);
}

TEST_CASE("turbine cost scales exactly with capacity") {
    auto a = ProjectSpec::make("a", "VA", 240, 12, 20, 10, 8);
    auto b = ProjectSpec::make("b", "VA", 480, 12, 20, 10, 8);
    auto params = toy_params();
    double ta = estimate_costs(a, params).value(CostCategory::Turbines);
    double tb = estimate_costs(b, params).value(CostCategory::Turbines);
    CHECK(tb / ta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ta == doctest::Approx(240 * 1000 * 1500.0 / 1e6).epsilon(1e-12));
}

TEST_CASE("weather delay scales only installation categories") {
    auto spec = ProjectSpec::make("a", "VA", 240, 12, 20, 10, 8);
    auto params = toy_params();
    auto calm = estimate_costs(spec, params);
    WeatherSeries rough{{5, 20}, {1, 1}};  // multiplier 2
    auto delayed = estimate_costs(spec, params, rough);
    for (CostCategory cat : all_cost_categories()) {
        if (is_installation_category(cat)) {
            CHECK(delayed.value(cat) == doctest::Approx(2.0 * calm.value(cat)));
        } else {
            CHECK(delayed.value(cat) == doctest::Approx(calm.value(cat)));
        }
    }
}

TEST_CASE("NAICS mapping truncates and aggregates") {
    std::map<CostCategory, std::string> mapping{
        {CostCategory::ArraySystem, "33592"},
        {CostCategory::ExportSystem, "33592"},
        {CostCategory::Turbines, "333"},
    };
    SUBCASE("aggregation to the 3-digit sector") {
        CostBreakdown costs;
        costs.values[CostCategory::ArraySystem] = 10.0;
        costs.values[CostCategory::ExportSystem] = 5.0;
        auto by_sector = map_costs_to_naics(costs, mapping);
        CHECK(by_sector.at("335") == doctest::Approx(15.0));
        CHECK(by_sector.size() == 1);
    }
    SUBCASE("turbines land in 333") {
        CostBreakdown costs;
        costs.values[CostCategory::Turbines] = 100.0;
        auto by_sector = map_costs_to_naics(costs, mapping);
        CHECK(by_sector.at("333") == doctest::Approx(100.0));
    }
    SUBCASE("empty breakdown maps to nothing") {
        CHECK(map_costs_to_naics({}, mapping).empty());
    }
    SUBCASE("unmapped category is an error") {
        CostBreakdown costs;
        costs.values[CostCategory::Insurance] = 1.0;
        CHECK_THROWS_AS(map_costs_to_naics(costs, mapping), DataError);
    }
}

TEST_CASE("shock construction isolates the turbine line") {
    auto index = make_index();
    std::map<CostCategory, std::string> mapping{
        {CostCategory::Turbines, "333"},
        {CostCategory::TurbineInstallation, "237"},
        {CostCategory::ArraySystem, "33592"},
    };
    auto spec = ProjectSpec::make("p", "VA", 24, 12, 20, 10, 8);

    SUBCASE("turbines-only breakdown") {
        CostBreakdown costs;
        costs.values[CostCategory::Turbines] = 100.0;
        auto [install, turbines] = build_shocks(spec, costs, mapping, index);
        CHECK(install.values.cwiseAbs().maxCoeff() == 0.0);
        CHECK(turbines.values.sum() == doctest::Approx(100.0));
        std::size_t flat = index->flatten(index->region_position("VA"),
                                          index->sector_position("333"));
        CHECK(turbines.values[static_cast<Eigen::Index>(flat)] == doctest::Approx(100.0));
    }
    SUBCASE("shock totals conserve the breakdown total") {
        CostBreakdown costs;
        costs.values[CostCategory::Turbines] = 100.0;
        costs.values[CostCategory::TurbineInstallation] = 40.0;
        costs.values[CostCategory::ArraySystem] = 7.5;
        auto [install, turbines] = build_shocks(spec, costs, mapping, index);
        CHECK(install.values.sum() + turbines.values.sum() ==
              doctest::Approx(costs.total()).epsilon(1e-15));
    }
    SUBCASE("unknown state is an error") {
        auto bad = ProjectSpec::make("p", "XX", 24, 12, 20, 10, 8);
        CostBreakdown costs;
        costs.values[CostCategory::Turbines] = 1.0;
        CHECK_THROWS_AS(build_shocks(bad, costs, mapping, index), DataError);
    }
    SUBCASE("sector missing from taxonomy is an error") {
        CostBreakdown costs;
        costs.values[CostCategory::ArraySystem] = 1.0;
        std::map<CostCategory, std::string> bad{{CostCategory::ArraySystem, "999"}};
        CHECK_THROWS_AS(build_shocks(spec, costs, bad, index), DataError);
    }
}

TEST_CASE("full breakdown conserves value through mapping") {
    auto spec = ProjectSpec::make("p", "VA", 240, 12, 20, 10, 8);
    auto costs = estimate_costs(spec, toy_params());
    CHECK(costs.values.size() == all_cost_categories().size());

    std::map<CostCategory, std::string> mapping;
    mapping[CostCategory::ArraySystem] = "33592";
    mapping[CostCategory::ExportSystem] = "33592";
    mapping[CostCategory::OffshoreSubstation] = "237130";
    mapping[CostCategory::ScourProtection] = "237990";
    mapping[CostCategory::Substructure] = "333611";
    mapping[CostCategory::ArraySystemInstallation] = "237130";
    mapping[CostCategory::ExportSystemInstallation] = "237130";
    mapping[CostCategory::OffshoreSubstationInstallation] = "237130";
    mapping[CostCategory::ScourProtectionInstallation] = "237990";
    mapping[CostCategory::SubstructureInstallation] = "238120";
    mapping[CostCategory::TurbineInstallation] = "237";
    mapping[CostCategory::Turbines] = "333";
    mapping[CostCategory::Insurance] = "524210";
    mapping[CostCategory::Financing] = "522";
    mapping[CostCategory::Contingency] = "624230";
    mapping[CostCategory::Commissioning] = "541350";
    mapping[CostCategory::Decommissioning] = "238910";
    mapping[CostCategory::SiteAuction] = "531";
    mapping[CostCategory::SiteAssessment] = "238910";
    mapping[CostCategory::ConstructionPlan] = "236";
    mapping[CostCategory::InstallationPlan] = "541";

    auto by_sector = map_costs_to_naics(costs, mapping);
    double mapped_total = 0.0;
    for (const auto& [sector, value] : by_sector) {
        CHECK(sector.size() == 3);
        mapped_total += value;
    }
    CHECK(mapped_total == doctest::Approx(costs.total()).epsilon(1e-12));
}

TEST_CASE("soft-cost fractions outside [0,1) are rejected") {
    auto params = toy_params();
    params.financing_fraction = 1.5;
    CHECK_THROWS_AS(params.validate(), DataError);
}

TEST_CASE("shipped parameter file loads and category names round trip") {
    auto params = load_cost_params(std::filesystem::path(EEMRIO_DATA_DIR) / "cost_params.csv");
    CHECK(params.turbine_price_usd_per_kw > 0.0);
    auto mapping =
        load_cost_naics_map(std::filesystem::path(EEMRIO_DATA_DIR) / "cost_naics_map.csv");
    CHECK(mapping.size() == all_cost_categories().size());
    for (CostCategory cat : all_cost_categories()) {
        CHECK(cost_category_from_string(to_string(cat)) == cat);
    }
}
