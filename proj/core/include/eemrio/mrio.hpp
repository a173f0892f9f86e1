#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eemrio/index.hpp"

namespace eemrio {

using IndexPtr = std::shared_ptr<const RegionSectorIndex>;

/// Multiregional supply/use tables in million USD.
/// U is products x industries, V is industries x products. The reference
/// tables are square (one product per industry position) but the derivation
/// only assumes matching dimensions.
struct SupplyUseTables {
    Eigen::MatrixXd use;              // U, product x industry
    Eigen::MatrixXd supply;           // V, industry x product
    Eigen::VectorXd industry_output;  // g, row sums of V
    Eigen::VectorXd product_output;   // q, column sums of V
    IndexPtr index;                   // industry axis

    /// Throws DataError on negative entries or row/column sums of V that
    /// disagree with g/q beyond 1e-6 relative.
    void validate() const;
};

/// Direct requirements matrix A: million USD of input per million USD of output.
struct DirectRequirements {
    Eigen::MatrixXd a;
    IndexPtr index;
};

/// Total requirements (Leontief inverse) L = (I-A)^{-1}.
struct TotalRequirements {
    Eigen::MatrixXd l;
    IndexPtr index;
};

struct FinalDemandShock {
    Eigen::VectorXd values;  // million USD
    std::string label;
    IndexPtr index;
};

struct ImpactVector {
    Eigen::VectorXd values;  // million USD
    IndexPtr index;
};

/// Solver selection for the Leontief inverse. Direct uses a dense LU
/// factorization; Neumann sums I + A + A^2 + ... and doubles as an
/// independent verification route.
struct Direct {};
struct Neumann {
    double tol = 1e-10;
    int max_iter = 10000;
};
using LeontiefMethod = std::variant<Direct, Neumann>;

/// Eurostat Model D (fixed product-sales structure): A = D * B with
/// market shares D[i,p] = V[i,p]/q[p] and coefficients B[p,j] = U[p,j]/g[j].
/// Columns of zero-output industries come out all-zero.
DirectRequirements derive_direct_requirements(const SupplyUseTables& sut);

/// Throws NumericError{NonProductive} if A cannot support an economy
/// (column-sum check first, Neumann convergence as the constructive fallback).
TotalRequirements leontief_inverse(const DirectRequirements& a,
                                   const LeontiefMethod& method = Direct{});

/// Total (direct + indirect) output induced by a final-demand shock: L * dy.
ImpactVector impact(const TotalRequirements& l, const FinalDemandShock& dy);

/// Splits an impact vector into the home region's block sum and everything else.
/// in_state + out_of_state equals the vector total in the same summation order.
std::pair<double, double> split_in_state(const ImpactVector& x, const std::string& home_region);

/// Sector totals aggregated across regions, sorted descending; ties broken by
/// sector code ascending. k larger than the sector count returns all sectors.
std::vector<std::pair<Sector, double>> top_sectors(const ImpactVector& x, std::size_t k);

/// Dense matrix CSV with REGION:SECTOR row/column labels matching `index`.
Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path, const RegionSectorIndex& index);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const RegionSectorIndex& index);

SupplyUseTables load_sut(const std::filesystem::path& use_path,
                         const std::filesystem::path& supply_path, IndexPtr index);

/// `impact.csv` layout: region,sector,value_musd (6 significant digits).
void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v,
                      const RegionSectorIndex& index, const std::string& value_header);
Eigen::VectorXd load_vector_csv(const std::filesystem::path& path,
                                const RegionSectorIndex& index);

}  // namespace eemrio
