#include "eemrio/mrio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eemrio/csv.hpp"
#include "eemrio/errors.hpp"

namespace eemrio {

namespace {

constexpr double kBalanceTol = 1e-6;

void require_same_index(const IndexPtr& a, const IndexPtr& b, const char* op) {
    if (!a || !b || !a->same_layout(*b)) {
        throw IndexMismatch(std::string(op) + ": operand taxonomies differ");
    }
}

}  // namespace

void SupplyUseTables::validate() const {
    const auto n = static_cast<Eigen::Index>(index->size());
    if (use.rows() != n || use.cols() != n || supply.rows() != n || supply.cols() != n ||
        industry_output.size() != n || product_output.size() != n) {
        throw IndexMismatch("supply/use tables do not match the taxonomy dimension");
    }
    if ((use.array() < 0.0).any() || (supply.array() < 0.0).any()) {
        throw DataError("negative flow in supply/use tables; clean the source data");
    }
    Eigen::VectorXd row_sums = supply.rowwise().sum();
    Eigen::VectorXd col_sums = supply.colwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        double scale = std::max(1.0, std::abs(industry_output[i]));
        if (std::abs(row_sums[i] - industry_output[i]) > kBalanceTol * scale) {
            throw DataError("supply row sum != industry output g for " +
                            index->label(static_cast<std::size_t>(i)));
        }
        scale = std::max(1.0, std::abs(product_output[i]));
        if (std::abs(col_sums[i] - product_output[i]) > kBalanceTol * scale) {
            throw DataError("supply column sum != product output q for " +
                            index->label(static_cast<std::size_t>(i)));
        }
    }
}

DirectRequirements derive_direct_requirements(const SupplyUseTables& sut) {
    sut.validate();
    const auto n = sut.supply.rows();

    // Market shares D[i,p] = V[i,p] / q[p]; zero-output products give a zero column.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        double q = sut.product_output[p];
        if (q > 0.0) {
            d.col(p) = sut.supply.col(p) / q;
        } else if (sut.supply.col(p).cwiseAbs().maxCoeff() > 0.0) {
            throw DataError("product " + sut.index->label(static_cast<std::size_t>(p)) +
                            " has supply but zero output q");
        }
    }

    // Coefficients B[p,j] = U[p,j] / g[j].
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double g = sut.industry_output[j];
        if (g > 0.0) {
            b.col(j) = sut.use.col(j) / g;
        } else if (sut.use.col(j).cwiseAbs().maxCoeff() > 0.0) {
            throw DataError("industry " + sut.index->label(static_cast<std::size_t>(j)) +
                            " uses inputs but has zero output g");
        }
    }

    return DirectRequirements{d * b, sut.index};
}

namespace {

/// Neumann partial sums L_k = I + A + ... + A^k, computed as L_{k} = L_{k-1} + T_k
/// with T_k = A * T_{k-1}. Converges iff A is productive.
Eigen::MatrixXd neumann_series(const Eigen::MatrixXd& a, double tol, int max_iter) {
    const auto n = a.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = a;
    double delta = 0.0;
    for (int k = 1; k <= max_iter; ++k) {
        l += term;
        delta = term.cwiseAbs().maxCoeff();
        if (delta < tol) {
            return l;
        }
        term = a * term;
    }
    std::ostringstream msg;
    msg << "Neumann series did not converge in " << max_iter
        << " iterations (residual " << delta << ")";
    throw NumericError(msg.str());
}

void report_non_productive(const Eigen::MatrixXd& a) {
    Eigen::VectorXd cs = a.colwise().sum();
    Eigen::Index worst = 0;
    cs.maxCoeff(&worst);
    std::ostringstream msg;
    msg << "direct requirements matrix is not productive; worst column " << worst
        << " has sum " << cs[worst];
    throw NumericError(msg.str());
}

}  // namespace

TotalRequirements leontief_inverse(const DirectRequirements& a, const LeontiefMethod& method) {
    if (a.a.rows() != a.a.cols() ||
        a.a.rows() != static_cast<Eigen::Index>(a.index->size())) {
        throw IndexMismatch("direct requirements matrix does not match its taxonomy");
    }
    if ((a.a.array() < 0.0).any()) {
        throw DataError("direct requirements matrix has negative coefficients");
    }

    const auto n = a.a.rows();
    const bool column_sums_ok = (a.a.colwise().sum().array() < 1.0).all();

    if (std::holds_alternative<Neumann>(method)) {
        const auto& nm = std::get<Neumann>(method);
        try {
            return TotalRequirements{neumann_series(a.a, nm.tol, nm.max_iter), a.index};
        } catch (const NumericError&) {
            if (!column_sums_ok) {
                report_non_productive(a.a);
            }
            throw;
        }
    }

    if (!column_sums_ok) {
        // Column sums < 1 is only sufficient; fall back to the constructive check.
        neumann_series(a.a, 1e-10, 10000);
    }
    Eigen::MatrixXd i_minus_a = Eigen::MatrixXd::Identity(n, n) - a.a;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(i_minus_a);
    Eigen::MatrixXd l = lu.solve(Eigen::MatrixXd::Identity(n, n));
    double residual = (i_minus_a * l - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > 1e-8) {
        report_non_productive(a.a);
    }
    return TotalRequirements{std::move(l), a.index};
}

ImpactVector impact(const TotalRequirements& l, const FinalDemandShock& dy) {
    require_same_index(l.index, dy.index, "impact");
    if ((dy.values.array() < 0.0).any() || !dy.values.allFinite()) {
        throw DataError("final demand shock must be nonnegative and finite");
    }
    return ImpactVector{l.l * dy.values, l.index};
}

std::pair<double, double> split_in_state(const ImpactVector& x, const std::string& home_region) {
    auto [first, last] = x.index->block_of(home_region);
    double in_state = 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.values.size(); ++i) {
        total += x.values[i];
        if (static_cast<std::size_t>(i) >= first && static_cast<std::size_t>(i) < last) {
            in_state += x.values[i];
        }
    }
    return {in_state, total - in_state};
}

std::vector<std::pair<Sector, double>> top_sectors(const ImpactVector& x, std::size_t k) {
    const auto& sectors = x.index->sectors();
    std::vector<double> agg(sectors.size(), 0.0);
    for (Eigen::Index i = 0; i < x.values.size(); ++i) {
        auto [r, s] = x.index->unflatten(static_cast<std::size_t>(i));
        agg[s] += x.values[i];
    }
    std::vector<std::size_t> order(sectors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (agg[lhs] != agg[rhs]) {
            return agg[lhs] > agg[rhs];
        }
        return sectors[lhs].naics < sectors[rhs].naics;
    });
    std::vector<std::pair<Sector, double>> out;
    out.reserve(std::min(k, order.size()));
    for (std::size_t i = 0; i < order.size() && i < k; ++i) {
        out.emplace_back(sectors[order[i]], agg[order[i]]);
    }
    return out;
}

Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path,
                                const RegionSectorIndex& index) {
    auto t = csv::read_file(path);
    const auto n = index.size();
    if (t.header.size() != n + 1 || t.rows.size() != n) {
        throw IndexMismatch(path.filename().string() + ": expected " + std::to_string(n) +
                            " labelled rows/columns");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (t.header[j + 1] != index.label(j)) {
            throw IndexMismatch(path.filename().string() + ": column " + std::to_string(j) +
                                " labelled '" + t.header[j + 1] + "', expected '" +
                                index.label(j) + "'");
        }
    }
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.rows[i][0] != index.label(i)) {
            throw IndexMismatch(path.filename().string() + ": row " + std::to_string(i) +
                                " labelled '" + t.rows[i][0] + "', expected '" +
                                index.label(i) + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                csv::to_double(t.rows[i][j + 1], path.filename().string());
        }
    }
    return m;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const RegionSectorIndex& index) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    const auto n = index.size();
    out << "label";
    for (std::size_t j = 0; j < n; ++j) {
        out << ',' << index.label(j);
    }
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << index.label(i);
        for (std::size_t j = 0; j < n; ++j) {
            out << ',' << csv::format_sig(m(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)));
        }
        out << '\n';
    }
}

SupplyUseTables load_sut(const std::filesystem::path& use_path,
                         const std::filesystem::path& supply_path, IndexPtr index) {
    SupplyUseTables sut;
    sut.use = load_matrix_csv(use_path, *index);
    sut.supply = load_matrix_csv(supply_path, *index);
    sut.industry_output = sut.supply.rowwise().sum();
    sut.product_output = sut.supply.colwise().sum();
    sut.index = std::move(index);
    sut.validate();
    return sut;
}

void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v,
                      const RegionSectorIndex& index, const std::string& value_header) {
    if (v.size() != static_cast<Eigen::Index>(index.size())) {
        throw IndexMismatch("vector length does not match taxonomy");
    }
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "region,sector," << value_header << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        auto [r, s] = index.unflatten(static_cast<std::size_t>(i));
        out << index.regions()[r].code << ',' << index.sectors()[s].naics << ','
            << csv::format_sig(v[i]) << '\n';
    }
}

Eigen::VectorXd load_vector_csv(const std::filesystem::path& path,
                                const RegionSectorIndex& index) {
    auto t = csv::read_file(path);
    std::size_t cr = t.col("region");
    std::size_t cs = t.col("sector");
    // Value column is whatever the third schema column is named.
    std::size_t cv = 2;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (j != cr && j != cs) {
            cv = j;
        }
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index.size()));
    for (const auto& row : t.rows) {
        std::size_t flat = index.flatten(index.region_position(row[cr]),
                                         index.sector_position(row[cs]));
        v[static_cast<Eigen::Index>(flat)] =
            csv::to_double(row[cv], path.filename().string());
    }
    return v;
}

}  // namespace eemrio
