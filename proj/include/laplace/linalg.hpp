#pragma once

// Exact linear algebra over the integers/rationals for the diagram calculus.
//
// The production kernel is a sparse fraction-free Gauss-Jordan elimination:
// rows are kept primitive (integer entries with content 1), so every
// intermediate row is the minimal integer representative of a rational row.
// Row updates for one pivot are independent and run under OpenMP when
// Execution::Parallel is requested. rank_mod_prime is an independent dense
// route used to cross-check ranks; namespace reference holds the textbook
// dense algorithms used as test oracles.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "laplace/parallel.hpp"
#include "laplace/scalar.hpp"

namespace laplace::linalg {

struct Entry {
    std::size_t col;
    Integer value;

    bool operator==(const Entry&) const = default;
};

/// Sorted by column, no stored zeros.
using SparseVector = std::vector<Entry>;

class SparseMatrix {
public:
    SparseMatrix(std::size_t rows, std::size_t cols);
    static SparseMatrix from_dense(const std::vector<std::vector<Integer>>& dense);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const SparseVector& row(std::size_t i) const { return rows_.at(i); }

    /// Adds v to entry (i, j).
    void add(std::size_t i, std::size_t j, const Integer& v);
    Integer at(std::size_t i, std::size_t j) const;
    std::size_t nonzeros() const noexcept;

    std::vector<std::vector<Integer>> to_dense() const;

private:
    std::size_t cols_;
    std::vector<SparseVector> rows_;
};

/// Reduced row-echelon form: row k has its pivot at pivot_cols[k], and no other
/// row has an entry in that column. Rows are primitive integer vectors.
struct Echelon {
    std::size_t cols = 0;
    std::vector<SparseVector> rows;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const noexcept { return rows.size(); }
};

/// Fraction-free Gauss-Jordan. Columns are tried as pivots in the order given
/// by column_order (default: ascending); within a column the sparsest
/// candidate row is chosen. The result is deterministic for both execution modes.
Echelon row_reduce(const SparseMatrix& m, Execution exec = Execution::Serial,
                   const std::vector<std::size_t>& column_order = {});

std::size_t rank(const SparseMatrix& m, Execution exec = Execution::Serial,
                 const std::vector<std::size_t>& column_order = {});

/// Basis of {x : m x = 0}, one vector per non-pivot column (in ascending column
/// order), each primitive with a positive entry on its free column.
std::vector<SparseVector> nullspace(const SparseMatrix& m, Execution exec = Execution::Serial,
                                    const std::vector<std::size_t>& column_order = {});

/// Divides by the gcd of the entries; a zero vector is returned unchanged.
void make_primitive(SparseVector& v);

/// Rank over GF(p) for p = 2^61 - 1 by dense elimination. It is a lower bound
/// for the rational rank, and equals it whenever it reaches min(rows, cols).
std::size_t rank_mod_prime(const SparseMatrix& m, Execution exec = Execution::Serial);

namespace reference {

/// Classic dense Bareiss rank.
std::size_t bareiss_rank(std::vector<std::vector<Integer>> a);

/// Classic Gauss-Jordan nullspace over the rationals (one vector per free column,
/// free entry = 1).
std::vector<std::vector<Scalar>> rational_nullspace(const std::vector<std::vector<Integer>>& a);

} // namespace reference

} // namespace laplace::linalg
