#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "eemrio/mrio.hpp"
#include "eemrio/satellite.hpp"

using namespace eemrio;

namespace {

IndexPtr synthetic_index(std::size_t n_regions, std::size_t n_sectors) {
    std::vector<Region> regions;
    for (std::size_t i = 0; i < n_regions; ++i) {
        regions.push_back({"R" + std::to_string(i), ""});
    }
    std::vector<Sector> sectors;
    for (std::size_t i = 0; i < n_sectors; ++i) {
        sectors.push_back({std::to_string(100 + i), ""});
    }
    return std::make_shared<RegionSectorIndex>(std::move(regions), std::move(sectors));
}

Eigen::MatrixXd random_productive(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            a(i, j) = uni(rng);
            sum += a(i, j);
        }
        a.col(j) *= 0.8 / sum;
    }
    return a;
}

void bm_leontief_inverse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto index = synthetic_index(1, n);
    DirectRequirements a{random_productive(n, 42), index};
    for (auto _ : state) {
        auto l = leontief_inverse(a);
        benchmark::DoNotOptimize(l.l.data());
    }
    state.SetComplexityN(state.range(0));
}

void bm_impact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto index = synthetic_index(1, n);
    DirectRequirements a{random_productive(n, 42), index};
    auto l = leontief_inverse(a);
    Eigen::VectorXd dy = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0);
    FinalDemandShock shock{dy, "", index};
    for (auto _ : state) {
        auto x = impact(l, shock);
        benchmark::DoNotOptimize(x.values.data());
    }
}

void bm_model_d(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    SupplyUseTables sut;
    sut.index = synthetic_index(1, n);
    sut.supply = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < sut.supply.rows(); ++i) {
        for (Eigen::Index j = 0; j < sut.supply.cols(); ++j) {
            sut.supply(i, j) = (i == j ? 100.0 : 5.0) * uni(rng);
        }
    }
    sut.industry_output = sut.supply.rowwise().sum();
    sut.product_output = sut.supply.colwise().sum();
    sut.use = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index p = 0; p < sut.use.rows(); ++p) {
        for (Eigen::Index j = 0; j < sut.use.cols(); ++j) {
            sut.use(p, j) = uni(rng) * 0.5 * sut.industry_output[j] / static_cast<double>(n);
        }
    }
    for (auto _ : state) {
        auto a = derive_direct_requirements(sut);
        benchmark::DoNotOptimize(a.a.data());
    }
}

void bm_regionalize(benchmark::State& state) {
    const auto n_regions = static_cast<std::size_t>(state.range(0));
    std::vector<std::string> codes;
    std::vector<Region> regions;
    for (std::size_t i = 0; i < n_regions; ++i) {
        codes.push_back("R" + std::to_string(i));
        regions.push_back({codes.back(), ""});
    }
    std::vector<Sector> sectors;
    for (int i = 0; i < 50; ++i) {
        sectors.push_back({std::to_string(100 + i), ""});
    }
    auto index = std::make_shared<RegionSectorIndex>(regions, sectors);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    NationalInventory nat;
    ProxyShares proxy;
    std::vector<FacilityRecord> fac;
    for (const auto& s : sectors) {
        double total = uni(rng) * 1000.0;
        nat.emissions_by_sector[s.naics] = total;
        double wsum = 0.0;
        std::vector<double> w(n_regions);
        for (auto& v : w) {
            v = uni(rng) + 1e-6;
            wsum += v;
        }
        for (std::size_t r = 0; r < n_regions; ++r) {
            proxy.shares[s.naics][codes[r]] = w[r] / wsum;
        }
        for (int f = 0; f < 3; ++f) {
            fac.push_back({codes[static_cast<std::size_t>(f) % n_regions], s.naics,
                           uni(rng) * total * 0.2});
        }
    }
    for (auto _ : state) {
        auto sat = regionalize(nat, fac, proxy, index);
        benchmark::DoNotOptimize(sat.emissions.data());
    }
}

}  // namespace

BENCHMARK(bm_leontief_inverse)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_impact)->Arg(1000)->Arg(5000)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_model_d)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_regionalize)->Arg(10)->Arg(52)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
