#pragma once

// Box diagrams: rational linear combinations of compositions, with the
// box-removal derivative δ, the concatenation product, and the exact kernel
// computations built on them.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "laplace/index.hpp"
#include "laplace/linalg.hpp"
#include "laplace/parallel.hpp"
#include "laplace/scalar.hpp"

namespace laplace {

/// Degree caps for the linear-algebra operations.
inline constexpr unsigned kDefaultDegreeCap = 12;
/// 2^14 compositions of degree 15; anything larger is refused.
inline constexpr unsigned kMaxDegree = 15;

/// Display order: degree, then number of parts, then lexicographic.
struct DiagramOrder {
    bool operator()(const Composition& x, const Composition& y) const noexcept;
};

class DiagramPoly {
public:
    using Terms = std::map<Composition, Scalar, DiagramOrder>;

    DiagramPoly() = default;
    /// 1·c
    DiagramPoly(const Composition& c, const Scalar& coeff = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    Scalar coefficient(const Composition& c) const;
    /// Common degree of all terms; nullopt for zero or mixed degrees.
    std::optional<unsigned> homogeneous_degree() const;

    void add_term(const Composition& c, const Scalar& coeff);

    DiagramPoly& operator+=(const DiagramPoly& other);
    DiagramPoly& operator-=(const DiagramPoly& other);
    DiagramPoly& operator*=(const Scalar& c);
    friend DiagramPoly operator+(DiagramPoly a, const DiagramPoly& b) { return a += b; }
    friend DiagramPoly operator-(DiagramPoly a, const DiagramPoly& b) { return a -= b; }
    friend DiagramPoly operator*(DiagramPoly a, const Scalar& c) { return a *= c; }
    friend DiagramPoly operator*(const Scalar& c, DiagramPoly a) { return a *= c; }
    /// Concatenation product.
    friend DiagramPoly operator*(const DiagramPoly& a, const DiagramPoly& b);

    bool operator==(const DiagramPoly& other) const = default;

private:
    Terms terms_;
};

/// Removes one box in every possible way: (c_1..c_p) ↦ Σ_j c_j (…, c_j − 1, …),
/// zero parts deleted; δ of the empty diagram is 0.
DiagramPoly delta(const DiagramPoly& d);
DiagramPoly delta_power(const DiagramPoly& d, unsigned k);

DiagramPoly diagram_mul(const DiagramPoly& a, const DiagramPoly& b);
/// a·b − b·a
DiagramPoly diagram_commutator(const DiagramPoly& a, const DiagramPoly& b);

/// Σ_{s=0}^{n} (−1)^s C(n,s) (n−s, 1^s) with (0,1^n) read as (1,1^{n−1}).
/// Throws DomainError for n < 2.
DiagramPoly fundamental(unsigned n);

/// p-fold commutator of [1] with fundamental(n); degree n + p.
DiagramPoly derived_invariant(unsigned n, unsigned p);

/// Number of trailing parts equal to 1.
unsigned trailing_ones(const Composition& c);

/// Matrix of δ : L^(n) → L^(n−1) in the bases compositions(n) (columns) and
/// compositions(n−1) (rows). Requires 1 <= n <= kMaxDegree.
linalg::SparseMatrix delta_matrix(unsigned n);

/// Column pivot preference for delta_matrix: more trailing ones first.
std::vector<std::size_t> delta_pivot_order(unsigned n);

/// Exact basis of ker δ on degree n (2 <= n <= kMaxDegree): primitive integer
/// vectors whose first term in display order has a positive coefficient.
std::vector<DiagramPoly> kernel_basis(unsigned n, Execution exec = Execution::Serial);

/// Exact rank of δ on degree n.
std::size_t delta_rank(unsigned n, Execution exec = Execution::Serial);

/// All concatenation products of derived invariants I_m^(p) (m >= 2) of total degree n.
std::vector<DiagramPoly> generator_products(unsigned n);

/// Exact rank of the span of generator_products(n).
std::size_t generated_kernel_rank(unsigned n, Execution exec = Execution::Serial);

/// Averages every term over the distinct reorderings of its parts. Throws
/// DomainError for a non-homogeneous input.
DiagramPoly symmetric_projection(const DiagramPoly& d);
bool is_symmetric(const DiagramPoly& d);

/// Dimension of the image of symmetric_projection on degree n.
std::size_t symmetric_dimension(unsigned n);
/// Rank of δ restricted to the symmetric elements of degree n.
std::size_t symmetric_delta_rank(unsigned n);

/// Exact rank of a family of homogeneous degree-n diagram polynomials.
std::size_t diagram_rank(const std::vector<DiagramPoly>& family, unsigned n, Execution exec = Execution::Serial);

} // namespace laplace
