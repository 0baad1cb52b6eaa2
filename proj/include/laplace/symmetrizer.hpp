#pragma once

// From index-free diagrams to indexed operators: Σ_J injection sums, the
// overbar normalisation, and expansion of L-polynomials into DiffOps.

#include <cstddef>
#include <map>
#include <vector>

#include "laplace/boxdiag.hpp"
#include "laplace/diffop.hpp"
#include "laplace/index.hpp"
#include "laplace/parallel.hpp"
#include "laplace/scalar.hpp"

namespace laplace {

/// Ordered product L_{J_1} … L_{J_p} of formal L symbols; the empty product is 1.
class LMonomial {
public:
    LMonomial() = default;
    /// Throws DomainError if a factor is empty.
    explicit LMonomial(std::vector<IndexSet> factors);

    const std::vector<IndexSet>& factors() const noexcept { return factors_; }
    std::size_t length() const noexcept { return factors_.size(); }
    /// L-degree: Σ |J_i|.
    std::size_t degree() const noexcept;
    /// Block sizes as a composition.
    Composition shape() const;

    LMonomial operator*(const LMonomial& other) const;
    bool operator==(const LMonomial&) const = default;

private:
    std::vector<IndexSet> factors_;
};

/// L-degree, then number of factors, then lexicographic.
struct LMonomialOrder {
    bool operator()(const LMonomial& x, const LMonomial& y) const noexcept;
};

class LPoly {
public:
    using Terms = std::map<LMonomial, Scalar, LMonomialOrder>;

    LPoly() = default;
    LPoly(const LMonomial& m, const Scalar& c = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    Scalar coefficient(const LMonomial& m) const;

    void add_term(const LMonomial& m, const Scalar& c);

    LPoly& operator+=(const LPoly& other);
    LPoly& operator-=(const LPoly& other);
    LPoly& operator*=(const Scalar& c);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(LPoly a, const Scalar& c) { return a *= c; }
    friend LPoly operator*(const Scalar& c, LPoly a) { return a *= c; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);

    bool operator==(const LPoly&) const = default;

private:
    Terms terms_;
};

/// Σ_J: for every composition (c_1..c_p) of degree m and every injection of its
/// m box slots into J, the monomial whose i-th factor is the image of the i-th
/// block. Throws DomainError if some degree exceeds |J|.
LPoly sigma(const DiagramPoly& pattern, const IndexSet& j);

/// sigma scaled by 1/m!; every composition must have degree exactly |J|.
LPoly overbar(const DiagramPoly& pattern, const IndexSet& j);

/// Substitutes build_L for every factor and composes.
DiffOp expand(const LPoly& p, Execution exec = Execution::Serial);

/// Order-zero part of expand(p), obtained by applying each product to 1.
CoeffPoly order_zero_part(const LPoly& p);

/// expand(sigma(pattern, j)) computed by dynamic programming over subsets of J,
/// without materialising the injection sum.
DiffOp expand_sigma(const DiagramPoly& pattern, const IndexSet& j, Execution exec = Execution::Serial);
/// expand(overbar(pattern, j)) by the same route.
DiffOp expand_overbar(const DiagramPoly& pattern, const IndexSet& j, Execution exec = Execution::Serial);
/// order_zero_part(overbar(pattern, j)) by the same route.
CoeffPoly order_zero_overbar(const DiagramPoly& pattern, const IndexSet& j, Execution exec = Execution::Serial);

/// Groups the summands of a monomial Θ expansion by |K| and by the shape of the
/// residual product: result[k] is the diagram polynomial multiplying θ_k.
std::map<unsigned, DiagramPoly> theta_profile(const std::vector<ThetaTerm>& terms);

LMonomial relabel(const LMonomial& m, const std::map<Label, Label>& map);
LPoly relabel(const LPoly& p, const std::map<Label, Label>& map);

} // namespace laplace
