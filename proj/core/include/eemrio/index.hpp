#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eemrio {

/// Tag used for the wind energy sector in place of a NAICS code.
inline constexpr const char* kWindSectorCode = "WIND";

struct Region {
    std::string code;  // short uppercase identifier, e.g. "VA"
    std::string name;
};

struct Sector {
    std::string naics;  // 3 ASCII digits or "WIND"
    std::string name;
};

/// Canonical bijection between (region, sector) labels and flat vector
/// positions. Region-major: all sectors of region 0 first, then region 1, ...
/// so every region's block of the economy is a contiguous index range.
/// Immutable after construction and freely shareable across threads.
class RegionSectorIndex {
public:
    RegionSectorIndex(std::vector<Region> regions, std::vector<Sector> sectors);

    std::size_t n_regions() const { return regions_.size(); }
    std::size_t n_sectors() const { return sectors_.size(); }
    std::size_t size() const { return regions_.size() * sectors_.size(); }

    const std::vector<Region>& regions() const { return regions_; }
    const std::vector<Sector>& sectors() const { return sectors_; }

    std::size_t flatten(std::size_t region, std::size_t sector) const;
    std::pair<std::size_t, std::size_t> unflatten(std::size_t flat) const;

    /// Half-open flat range [first, last) covering all sectors of a region.
    std::pair<std::size_t, std::size_t> block_of(const std::string& region_code) const;

    std::size_t region_position(const std::string& code) const;  // throws DataError
    std::size_t sector_position(const std::string& naics) const;

    std::optional<std::size_t> find_region(const std::string& code) const;
    std::optional<std::size_t> find_sector(const std::string& naics) const;

    /// Label "REGION:SECTOR" for a flat position, used in matrix CSV headers.
    std::string label(std::size_t flat) const;

    bool same_layout(const RegionSectorIndex& other) const;

private:
    std::vector<Region> regions_;
    std::vector<Sector> sectors_;
};

Region parse_region_row(const std::string& code, const std::string& name);
Sector parse_sector_row(const std::string& naics, const std::string& name);

/// Loads `regions.csv` (columns code,name) and `sectors.csv` (columns naics,name).
std::vector<Region> load_regions(const std::filesystem::path& path);
std::vector<Sector> load_sectors(const std::filesystem::path& path);

}  // namespace eemrio
