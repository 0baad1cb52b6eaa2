#include "laplace/invariants.hpp"

#include <algorithm>

#include "laplace/diffop.hpp"
#include "laplace/errors.hpp"

namespace laplace {

namespace {

std::map<Label, Label> label_map(const IndexSet& from, const IndexSet& to) {
    std::map<Label, Label> m;
    for (std::size_t i = 0; i < from.size(); ++i) m.emplace(from[i], to[i]);
    return m;
}

template <class Poly>
Poly symmetrize_impl(const Poly& p, const IndexSet& j) {
    std::vector<Label> perm(j.begin(), j.end());
    Poly sum;
    std::size_t count = 0;
    do {
        std::map<Label, Label> m;
        for (std::size_t i = 0; i < perm.size(); ++i) m.emplace(j[i], perm[i]);
        sum += relabel(p, m);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    sum *= Scalar(1) / Scalar(static_cast<long>(count));
    return sum;
}

} // namespace

Invariant generate(unsigned n, const IndexSet& j, Execution exec) {
    if (n < 2) throw DomainError("invariants start at order 2");
    if (j.size() != n) throw DomainError("index set " + to_string(j) + " does not have " + std::to_string(n) + " labels");
    const IndexSet base = IndexSet::range(n);
    Invariant inv;
    inv.order = n;
    inv.indices = base;
    inv.diagram = fundamental(n);
    inv.l_form = overbar(inv.diagram, base);
    inv.a_form = order_zero_overbar(inv.diagram, base, exec);
    return j == base ? inv : relabel(inv, j);
}

CoeffPoly gauge_residual(const CoeffPoly& p, Execution exec) { return gauge_transform(p, exec) - p; }

bool verify_invariance(const CoeffPoly& p, Execution exec) { return gauge_residual(p, exec).is_zero(); }

bool verify_invariance(const Invariant& inv, Execution exec) { return verify_invariance(inv.a_form, exec); }

CoeffPoly derivative_invariant(const Invariant& inv, Label k) { return derive(inv.a_form, k); }

CoeffPoly derivative_invariant_by_commutator(const Invariant& inv, Label k) {
    return commutator(build_L({k}), expand(inv.l_form)).order_zero_part();
}

std::size_t catalog_size(unsigned n) {
    if (n < 2) return 0;
    return (std::size_t{1} << n) - n - 1;
}

std::vector<Invariant> catalog(unsigned n, unsigned full_check_order, Execution exec) {
    if (n < 2) throw DomainError("catalog needs n >= 2");
    if (n > kMaxDegree) throw DomainError("catalog order exceeds the memory guard");

    // one representative per order, relabeled onto every subset
    std::vector<Invariant> reps(n + 1);
    for (unsigned s = 2; s <= n; ++s) {
        reps[s] = generate(s, IndexSet::range(s), exec);
        reps[s].kernel_checked = delta(reps[s].diagram).is_zero();
    }

    std::vector<IndexSet> sets;
    for (const auto& s : subsets(IndexSet::range(n)))
        if (s.size() >= 2) sets.push_back(s);

    std::vector<Invariant> out(sets.size());
    const long count = static_cast<long>(sets.size());
    auto fill = [&](long i) {
        const IndexSet& s = sets[static_cast<std::size_t>(i)];
        Invariant inv = relabel(reps[s.size()], s);
        if (inv.order <= full_check_order) inv.verified = verify_invariance(inv.a_form);
        out[static_cast<std::size_t>(i)] = std::move(inv);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) fill(i);
    } else {
        for (long i = 0; i < count; ++i) fill(i);
    }
    return out;
}

CoeffPoly symmetrize(const CoeffPoly& p, const IndexSet& j) { return symmetrize_impl(p, j); }

LPoly symmetrize(const LPoly& p, const IndexSet& j) { return symmetrize_impl(p, j); }

Invariant relabel(const Invariant& inv, const IndexSet& j) {
    if (j.size() != inv.indices.size()) throw DomainError("relabeling must preserve the number of labels");
    const auto m = label_map(inv.indices, j);
    Invariant out = inv;
    out.indices = j;
    out.l_form = relabel(inv.l_form, m);
    out.a_form = relabel(inv.a_form, m);
    return out;
}

} // namespace laplace
