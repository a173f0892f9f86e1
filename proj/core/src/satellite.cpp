#include "eemrio/satellite.hpp"

#include <cmath>
#include <fstream>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

SatelliteAccount regionalize(const NationalInventory& national,
                             const std::vector<FacilityRecord>& facilities,
                             const ProxyShares& proxy, IndexPtr index) {
    const auto n_regions = index->n_regions();
    const auto n_sectors = index->n_sectors();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index->size()));

    for (const auto& [code, value] : national.emissions_by_sector) {
        if (!index->find_sector(code)) {
            throw DataError("national inventory references unknown sector '" + code + "'");
        }
        if (value < 0.0) {
            throw DataError("negative national emissions for sector '" + code + "'");
        }
    }

    // Facility coverage per (region, sector), accumulated in flat-index order
    // so the result does not depend on the input record order.
    std::vector<std::vector<double>> covered(n_sectors, std::vector<double>(n_regions, 0.0));
    for (const auto& f : facilities) {
        auto s = index->find_sector(f.sector);
        if (!s) {
            throw DataError("facility references unknown sector '" + f.sector + "'");
        }
        auto r = index->find_region(f.region);
        if (!r) {
            throw DataError("facility references unknown region '" + f.region + "'");
        }
        if (f.emissions < 0.0) {
            throw DataError("negative facility emissions in region '" + f.region + "'");
        }
        covered[*s][*r] += f.emissions;
    }

    for (std::size_t s = 0; s < n_sectors; ++s) {
        const auto& sector = index->sectors()[s];
        if (sector.naics == kWindSectorCode) {
            continue;  // the wind sector carries no emissions
        }
        auto it = national.emissions_by_sector.find(sector.naics);
        double target = it == national.emissions_by_sector.end() ? 0.0 : it->second;

        double cov_total = 0.0;
        for (double v : covered[s]) {
            cov_total += v;
        }

        if (cov_total > target && cov_total > 0.0) {
            // Facilities overshoot the national control total; keep their
            // geography, rescale to conserve.
            double scale = target / cov_total;
            for (std::size_t r = 0; r < n_regions; ++r) {
                out[static_cast<Eigen::Index>(index->flatten(r, s))] = covered[s][r] * scale;
            }
            continue;
        }

        double residual = target - cov_total;
        if (residual > 0.0) {
            auto pit = proxy.shares.find(sector.naics);
            if (pit == proxy.shares.end()) {
                throw DataError("no proxy shares for sector '" + sector.naics +
                                "' with uncovered emissions");
            }
            double share_sum = 0.0;
            for (const auto& [region, share] : pit->second) {
                if (!index->find_region(region)) {
                    throw DataError("proxy references unknown region '" + region + "'");
                }
                if (share < 0.0) {
                    throw DataError("negative proxy share for sector '" + sector.naics + "'");
                }
                share_sum += share;
            }
            if (std::abs(share_sum - 1.0) > 1e-9) {
                throw DataError("proxy shares for sector '" + sector.naics +
                                "' sum to " + std::to_string(share_sum) + ", expected 1");
            }
            for (std::size_t r = 0; r < n_regions; ++r) {
                auto rit = pit->second.find(index->regions()[r].code);
                double share = rit == pit->second.end() ? 0.0 : rit->second;
                out[static_cast<Eigen::Index>(index->flatten(r, s))] =
                    covered[s][r] + residual * share;
            }
        } else {
            for (std::size_t r = 0; r < n_regions; ++r) {
                out[static_cast<Eigen::Index>(index->flatten(r, s))] = covered[s][r];
            }
        }
    }

    return SatelliteAccount{std::move(out), std::move(index)};
}

EmissionsFactors emissions_factors(const SatelliteAccount& sat,
                                   const Eigen::VectorXd& total_output) {
    if (total_output.size() != sat.emissions.size()) {
        throw IndexMismatch("emissions_factors: output vector length mismatch");
    }
    if ((total_output.array() < 0.0).any()) {
        throw DataError("negative total industry output");
    }
    Eigen::VectorXd ef = Eigen::VectorXd::Zero(sat.emissions.size());
    for (Eigen::Index i = 0; i < ef.size(); ++i) {
        if (total_output[i] > 0.0) {
            ef[i] = sat.emissions[i] / total_output[i];
        }
    }
    return EmissionsFactors{std::move(ef), sat.index};
}

EmissionsImpact emissions_impact(const EmissionsFactors& ef, const ImpactVector& dx) {
    if (!ef.index || !dx.index || !ef.index->same_layout(*dx.index)) {
        throw IndexMismatch("emissions_impact: operand taxonomies differ");
    }
    return EmissionsImpact{ef.ef.cwiseProduct(dx.values), ef.index};
}

NationalInventory Concordance::apply(
    const std::map<std::string, double>& source_inventory) const {
    NationalInventory out;
    for (const auto& e : entries) {
        auto it = source_inventory.find(e.source_code);
        if (it == source_inventory.end()) {
            continue;
        }
        out.emissions_by_sector[e.naics] += it->second * e.weight;
    }
    return out;
}

NationalInventory load_national_inventory(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cn = t.col("naics");
    std::size_t ce = t.col("emissions_t");
    NationalInventory inv;
    for (const auto& row : t.rows) {
        inv.emissions_by_sector[row[cn]] += csv::to_double(row[ce], "national inventory");
    }
    return inv;
}

std::vector<FacilityRecord> load_facilities(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cr = t.col("region");
    std::size_t cn = t.col("naics");
    std::size_t ce = t.col("emissions_t");
    std::vector<FacilityRecord> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.push_back({row[cr], row[cn], csv::to_double(row[ce], "facilities")});
    }
    return out;
}

ProxyShares load_proxy(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cn = t.col("naics");
    std::size_t cr = t.col("region");
    std::size_t cs = t.col("share");
    ProxyShares p;
    for (const auto& row : t.rows) {
        p.shares[row[cn]][row[cr]] += csv::to_double(row[cs], "proxy shares");
    }
    return p;
}

Concordance load_concordance(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cs = t.col("source_code");
    std::size_t cn = t.col("naics");
    std::size_t cw = t.col("weight");
    Concordance c;
    for (const auto& row : t.rows) {
        c.entries.push_back({row[cs], row[cn], csv::to_double(row[cw], "concordance")});
    }
    return c;
}

void write_satellite_csv(const std::filesystem::path& path, const SatelliteAccount& sat) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "region,sector,emissions_t\n";
    for (Eigen::Index i = 0; i < sat.emissions.size(); ++i) {
        auto [r, s] = sat.index->unflatten(static_cast<std::size_t>(i));
        out << sat.index->regions()[r].code << ',' << sat.index->sectors()[s].naics << ','
            << csv::format_sig(sat.emissions[i]) << '\n';
    }
}

ProxyShares output_share_proxy(const Eigen::VectorXd& total_output,
                               const RegionSectorIndex& index) {
    ProxyShares p;
    const auto n_regions = index.n_regions();
    for (std::size_t s = 0; s < index.n_sectors(); ++s) {
        double total = 0.0;
        for (std::size_t r = 0; r < n_regions; ++r) {
            total += total_output[static_cast<Eigen::Index>(index.flatten(r, s))];
        }
        auto& row = p.shares[index.sectors()[s].naics];
        for (std::size_t r = 0; r < n_regions; ++r) {
            double v = total > 0.0
                           ? total_output[static_cast<Eigen::Index>(index.flatten(r, s))] / total
                           : 1.0 / static_cast<double>(n_regions);
            row[index.regions()[r].code] = v;
        }
    }
    return p;
}

}  // namespace eemrio
