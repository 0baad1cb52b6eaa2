#pragma once

// Fundamental invariants of an order-n operator: generation on an index set,
// symbolic gauge verification, derived invariants and the full catalog.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "laplace/boxdiag.hpp"
#include "laplace/coeff.hpp"
#include "laplace/index.hpp"
#include "laplace/parallel.hpp"
#include "laplace/symmetrizer.hpp"

namespace laplace {

struct Invariant {
    unsigned order = 0;
    IndexSet indices;
    DiagramPoly diagram;
    LPoly l_form;
    CoeffPoly a_form;
    /// Outcome of the full gauge check; nullopt when it was not run.
    std::optional<bool> verified;
    /// Whether the diagram was confirmed to lie in the kernel of δ.
    bool kernel_checked = false;
};

/// The fundamental invariant of degree n on J. Throws DomainError unless |J| = n >= 2.
Invariant generate(unsigned n, const IndexSet& j, Execution exec = Execution::Serial);

/// gauge_transform(p) − p; zero exactly when p is invariant.
CoeffPoly gauge_residual(const CoeffPoly& p, Execution exec = Execution::Serial);
bool verify_invariance(const CoeffPoly& p, Execution exec = Execution::Serial);
bool verify_invariance(const Invariant& inv, Execution exec = Execution::Serial);

/// ∂_k of the a-form.
CoeffPoly derivative_invariant(const Invariant& inv, Label k);
/// The same derivative as the order-zero part of [L_k, expand(l_form)].
CoeffPoly derivative_invariant_by_commutator(const Invariant& inv, Label k);

/// 2^n − n − 1
std::size_t catalog_size(unsigned n);

/// One invariant per subset S of {1..n} with |S| >= 2, ordered by size then
/// lexicographically. Entries of order <= full_check_order get the gauge
/// check; every entry gets the δ-kernel check.
std::vector<Invariant> catalog(unsigned n, unsigned full_check_order = 4, Execution exec = Execution::Serial);

/// Average of p over all permutations of the labels of J.
CoeffPoly symmetrize(const CoeffPoly& p, const IndexSet& j);
LPoly symmetrize(const LPoly& p, const IndexSet& j);

/// Moves the invariant to another index set of the same size, mapping the
/// i-th label of inv.indices to the i-th label of j.
Invariant relabel(const Invariant& inv, const IndexSet& j);

} // namespace laplace
