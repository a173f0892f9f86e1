#include "eemrio/index.hpp"

#include <cctype>
#include <unordered_set>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

namespace {

void check_unique(const std::vector<std::string>& codes, const char* kind) {
    std::unordered_set<std::string> seen;
    for (const auto& c : codes) {
        if (c.empty()) {
            throw DataError(std::string("empty ") + kind + " code");
        }
        if (!seen.insert(c).second) {
            throw DataError(std::string("duplicate ") + kind + " code '" + c + "'");
        }
    }
}

}  // namespace

RegionSectorIndex::RegionSectorIndex(std::vector<Region> regions, std::vector<Sector> sectors)
    : regions_(std::move(regions)), sectors_(std::move(sectors)) {
    if (regions_.empty() || sectors_.empty()) {
        throw DataError("taxonomy must have at least one region and one sector");
    }
    std::vector<std::string> rcodes, scodes;
    rcodes.reserve(regions_.size());
    for (const auto& r : regions_) rcodes.push_back(r.code);
    scodes.reserve(sectors_.size());
    for (const auto& s : sectors_) scodes.push_back(s.naics);
    check_unique(rcodes, "region");
    check_unique(scodes, "sector");
}

std::size_t RegionSectorIndex::flatten(std::size_t region, std::size_t sector) const {
    return region * sectors_.size() + sector;
}

std::pair<std::size_t, std::size_t> RegionSectorIndex::unflatten(std::size_t flat) const {
    return {flat / sectors_.size(), flat % sectors_.size()};
}

std::pair<std::size_t, std::size_t> RegionSectorIndex::block_of(
    const std::string& region_code) const {
    std::size_t r = region_position(region_code);
    return {r * sectors_.size(), (r + 1) * sectors_.size()};
}

std::size_t RegionSectorIndex::region_position(const std::string& code) const {
    if (auto p = find_region(code)) {
        return *p;
    }
    throw DataError("unknown region '" + code + "'");
}

std::size_t RegionSectorIndex::sector_position(const std::string& naics) const {
    if (auto p = find_sector(naics)) {
        return *p;
    }
    throw DataError("unknown sector '" + naics + "'");
}

std::optional<std::size_t> RegionSectorIndex::find_region(const std::string& code) const {
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        if (regions_[i].code == code) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> RegionSectorIndex::find_sector(const std::string& naics) const {
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
        if (sectors_[i].naics == naics) {
            return i;
        }
    }
    return std::nullopt;
}

std::string RegionSectorIndex::label(std::size_t flat) const {
    auto [r, s] = unflatten(flat);
    return regions_[r].code + ":" + sectors_[s].naics;
}

bool RegionSectorIndex::same_layout(const RegionSectorIndex& other) const {
    if (regions_.size() != other.regions_.size() || sectors_.size() != other.sectors_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        if (regions_[i].code != other.regions_[i].code) {
            return false;
        }
    }
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
        if (sectors_[i].naics != other.sectors_[i].naics) {
            return false;
        }
    }
    return true;
}

Region parse_region_row(const std::string& code, const std::string& name) {
    if (code.empty()) {
        throw DataError("empty region code");
    }
    return Region{code, name};
}

Sector parse_sector_row(const std::string& naics, const std::string& name) {
    bool is_wind = naics == kWindSectorCode;
    bool is_naics3 = naics.size() == 3 &&
                     std::isdigit(static_cast<unsigned char>(naics[0])) &&
                     std::isdigit(static_cast<unsigned char>(naics[1])) &&
                     std::isdigit(static_cast<unsigned char>(naics[2]));
    if (!is_wind && !is_naics3) {
        throw DataError("sector code must be 3 digits or WIND, got '" + naics + "'");
    }
    return Sector{naics, name};
}

std::vector<Region> load_regions(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t ccode = t.col("code");
    std::size_t cname = t.col("name");
    std::vector<Region> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.push_back(parse_region_row(row[ccode], row[cname]));
    }
    return out;
}

std::vector<Sector> load_sectors(const std::filesystem::path& path) {
    auto t = csv::read_file(path);
    std::size_t cnaics = t.col("naics");
    std::size_t cname = t.col("name");
    std::vector<Sector> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.push_back(parse_sector_row(row[cnaics], row[cname]));
    }
    return out;
}

}  // namespace eemrio
