#include "laplace/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "laplace/errors.hpp"

namespace laplace::linalg {

// SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Integer>>& dense) {
    SparseMatrix m(dense.size(), dense.empty() ? 0 : dense.front().size());
    for (std::size_t i = 0; i < dense.size(); ++i)
        for (std::size_t j = 0; j < dense[i].size(); ++j)
            if (dense[i][j] != 0) m.add(i, j, dense[i][j]);
    return m;
}

void SparseMatrix::add(std::size_t i, std::size_t j, const Integer& v) {
    if (j >= cols_) throw DomainError("column index out of range");
    auto& row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it != row.end() && it->col == j) {
        it->value += v;
        if (it->value == 0) row.erase(it);
    } else if (v != 0) {
        row.insert(it, Entry{j, v});
    }
}

Integer SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto& row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != row.end() && it->col == j) ? it->value : Integer(0);
}

std::size_t SparseMatrix::nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

std::vector<std::vector<Integer>> SparseMatrix::to_dense() const {
    std::vector<std::vector<Integer>> d(rows_.size(), std::vector<Integer>(cols_));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& e : rows_[i]) d[i][e.col] = e.value;
    return d;
}

// Fraction-free elimination

void make_primitive(SparseVector& v) {
    Integer g = 0;
    for (const auto& e : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& e : v) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
}

namespace {

const Integer* find_entry(const SparseVector& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != row.end() && it->col == col) ? &it->value : nullptr;
}

// target <- a*target - b*pivot, where a*target[col] == b*pivot[col].
void eliminate(SparseVector& target, const SparseVector& pivot, std::size_t col) {
    const Integer& p = *find_entry(pivot, col);
    const Integer& e = *find_entry(target, col);
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), e.get_mpz_t());
    Integer a = p / g;
    Integer b = e / g;

    SparseVector out;
    out.reserve(target.size() + pivot.size());
    auto t = target.begin();
    auto q = pivot.begin();
    while (t != target.end() || q != pivot.end()) {
        if (q == pivot.end() || (t != target.end() && t->col < q->col)) {
            out.push_back({t->col, a * t->value});
            ++t;
        } else if (t == target.end() || q->col < t->col) {
            out.push_back({q->col, -b * q->value});
            ++q;
        } else {
            Integer v = a * t->value - b * q->value;
            if (v != 0) out.push_back({t->col, std::move(v)});
            ++t;
            ++q;
        }
    }
    make_primitive(out);
    target = std::move(out);
}

} // namespace

Echelon row_reduce(const SparseMatrix& m, Execution exec, const std::vector<std::size_t>& column_order) {
    std::vector<std::size_t> order = column_order;
    if (order.empty()) {
        order.resize(m.cols());
        std::iota(order.begin(), order.end(), std::size_t{0});
    } else {
        std::vector<std::size_t> check = order;
        std::sort(check.begin(), check.end());
        bool ok = check.size() == m.cols();
        for (std::size_t i = 0; ok && i < check.size(); ++i) ok = check[i] == i;
        if (!ok) throw DomainError("column order must be a permutation of the columns");
    }

    std::vector<SparseVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row(i).empty()) continue;
        rows.push_back(m.row(i));
        make_primitive(rows.back());
    }
    std::vector<char> is_pivot(rows.size(), 0);
    std::vector<std::size_t> pivot_rows;

    Echelon ech;
    ech.cols = m.cols();
    std::vector<std::size_t> targets;
    for (std::size_t c : order) {
        std::size_t best = rows.size();
        targets.clear();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Integer* v = find_entry(rows[r], c);
            if (!v) continue;
            targets.push_back(r);
            if (is_pivot[r]) continue;
            if (best == rows.size() || rows[r].size() < rows[best].size() ||
                (rows[r].size() == rows[best].size() && mpz_cmpabs(v->get_mpz_t(), find_entry(rows[best], c)->get_mpz_t()) < 0))
                best = r;
        }
        if (best == rows.size()) continue;
        is_pivot[best] = 1;
        pivot_rows.push_back(best);
        ech.pivot_cols.push_back(c);
        targets.erase(std::find(targets.begin(), targets.end(), best));

        const SparseVector& prow = rows[best];
        const long ntargets = static_cast<long>(targets.size());
        if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long k = 0; k < ntargets; ++k) eliminate(rows[targets[k]], prow, c);
        } else {
            for (long k = 0; k < ntargets; ++k) eliminate(rows[targets[k]], prow, c);
        }
    }

    for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
        SparseVector row = std::move(rows[pivot_rows[k]]);
        if (*find_entry(row, ech.pivot_cols[k]) < 0)
            for (auto& e : row) e.value = -e.value;
        ech.rows.push_back(std::move(row));
    }
    return ech;
}

std::size_t rank(const SparseMatrix& m, Execution exec, const std::vector<std::size_t>& column_order) {
    return row_reduce(m, exec, column_order).rank();
}

std::vector<SparseVector> nullspace(const SparseMatrix& m, Execution exec,
                                    const std::vector<std::size_t>& column_order) {
    Echelon ech = row_reduce(m, exec, column_order);
    std::vector<char> pivot(m.cols(), 0);
    for (auto c : ech.pivot_cols) pivot[c] = 1;

    // per free column, the (row, value) pairs that mention it
    std::vector<std::vector<std::pair<std::size_t, const Integer*>>> mentions(m.cols());
    for (std::size_t k = 0; k < ech.rows.size(); ++k)
        for (const auto& e : ech.rows[k])
            if (!pivot[e.col]) mentions[e.col].emplace_back(k, &e.value);

    std::vector<SparseVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (pivot[f]) continue;
        Integer d = 1;
        for (auto [k, u] : mentions[f]) {
            const Integer& p = *find_entry(ech.rows[k], ech.pivot_cols[k]);
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        }
        SparseVector v;
        v.push_back({f, d});
        for (auto [k, u] : mentions[f]) {
            const Integer& p = *find_entry(ech.rows[k], ech.pivot_cols[k]);
            v.push_back({ech.pivot_cols[k], -(d / p) * *u});
        }
        std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Modular rank

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce_mod(const Integer& x) {
    return mpz_fdiv_ui(x.get_mpz_t(), kPrime);
}

void eliminate_row_mod(std::vector<std::uint64_t>& row, const std::vector<std::uint64_t>& prow, std::size_t col,
                       std::uint64_t inv_pivot) {
    if (row[col] == 0) return;
    const std::uint64_t factor = mulmod(row[col], inv_pivot);
    for (std::size_t j = col; j < row.size(); ++j) {
        if (prow[j] == 0) continue;
        std::uint64_t sub = mulmod(factor, prow[j]);
        row[j] = row[j] >= sub ? row[j] - sub : row[j] + kPrime - sub;
    }
}

} // namespace

std::size_t rank_mod_prime(const SparseMatrix& m, Execution exec) {
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    std::vector<std::vector<std::uint64_t>> a(nrows, std::vector<std::uint64_t>(ncols, 0));
    for (std::size_t i = 0; i < nrows; ++i)
        for (const auto& e : m.row(i)) a[i][e.col] = reduce_mod(e.value);

    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
        std::size_t p = rank;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[rank]);
        const std::uint64_t inv = powmod(a[rank][c], kPrime - 2);
        const auto& prow = a[rank];
        const long first = static_cast<long>(rank + 1);
        const long last = static_cast<long>(nrows);
        if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
            for (long i = first; i < last; ++i) eliminate_row_mod(a[i], prow, c, inv);
        } else {
            for (long i = first; i < last; ++i) eliminate_row_mod(a[i], prow, c, inv);
        }
        ++rank;
    }
    return rank;
}

// Reference algorithms

namespace reference {

std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    const std::size_t nrows = a.size();
    if (nrows == 0) return 0;
    const std::size_t ncols = a.front().size();
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
        std::size_t p = rank;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            for (std::size_t j = c + 1; j < ncols; ++j) {
                Integer v = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Scalar>> rational_nullspace(const std::vector<std::vector<Integer>>& in) {
    const std::size_t nrows = in.size();
    const std::size_t ncols = nrows ? in.front().size() : 0;
    std::vector<std::vector<Scalar>> a(nrows, std::vector<Scalar>(ncols));
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) a[i][j] = Scalar(in[i][j]);

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t p = r;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[r]);
        Scalar inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Scalar f = a[i][c];
            for (std::size_t j = 0; j < ncols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(ncols, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(ncols);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace reference

} // namespace laplace::linalg
