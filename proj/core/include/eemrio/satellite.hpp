#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "eemrio/mrio.hpp"

namespace eemrio {

/// National GHG inventory in metric tonnes CO2-eq per year, keyed by sector
/// code. Sectors absent from the map count as zero.
struct NationalInventory {
    std::map<std::string, double> emissions_by_sector;
};

/// One large-facility emissions record (tonnes CO2-eq per year).
struct FacilityRecord {
    std::string region;
    std::string sector;
    double emissions = 0.0;
};

/// Per-sector regional allocation shares used for emissions not covered by
/// facility data. Shares for a sector must sum to 1.
struct ProxyShares {
    std::map<std::string, std::map<std::string, double>> shares;  // sector -> region -> share
};

/// Region-by-sector emissions aligned to the flat index, tonnes CO2-eq/yr.
struct SatelliteAccount {
    Eigen::VectorXd emissions;
    IndexPtr index;
};

/// Tonnes CO2-eq per million USD of industry output.
struct EmissionsFactors {
    Eigen::VectorXd ef;
    IndexPtr index;
};

struct EmissionsImpact {
    Eigen::VectorXd values;  // tonnes CO2-eq
    IndexPtr index;
};

/// Disaggregates a national inventory into regions. Per sector, facility
/// records cover part of the total and the residual is spread by proxy
/// shares; if facilities overshoot the national total they are scaled down
/// proportionally. Regional sums reproduce the national total per sector.
/// The wind sector is forced to zero in every region.
SatelliteAccount regionalize(const NationalInventory& national,
                             const std::vector<FacilityRecord>& facilities,
                             const ProxyShares& proxy, IndexPtr index);

/// ef[i] = emissions[i] / output[i] where output is positive, else 0.
EmissionsFactors emissions_factors(const SatelliteAccount& sat,
                                   const Eigen::VectorXd& total_output);

/// Elementwise product of emissions factors and an economic impact vector.
EmissionsImpact emissions_impact(const EmissionsFactors& ef, const ImpactVector& dx);

/// Many-to-one code bridge with weights: maps a source-classified inventory
/// onto the engine's sector codes. Weights for one source code need not sum
/// to 1 (partial attributions are allowed by the source data).
struct Concordance {
    struct Entry {
        std::string source_code;
        std::string naics;
        double weight = 1.0;
    };
    std::vector<Entry> entries;

    NationalInventory apply(const std::map<std::string, double>& source_inventory) const;
};

NationalInventory load_national_inventory(const std::filesystem::path& path);
std::vector<FacilityRecord> load_facilities(const std::filesystem::path& path);
ProxyShares load_proxy(const std::filesystem::path& path);
Concordance load_concordance(const std::filesystem::path& path);

/// `satellite.csv`: region,sector,emissions_t.
void write_satellite_csv(const std::filesystem::path& path, const SatelliteAccount& sat);

/// Default economic proxy: each sector's regional output shares from the
/// total-output vector. Falls back to uniform shares for zero-output sectors.
ProxyShares output_share_proxy(const Eigen::VectorXd& total_output,
                               const RegionSectorIndex& index);

}  // namespace eemrio
