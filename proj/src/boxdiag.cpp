#include "laplace/boxdiag.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "laplace/errors.hpp"

namespace laplace {

bool DiagramOrder::operator()(const Composition& x, const Composition& y) const noexcept {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    if (x.length() != y.length()) return x.length() < y.length();
    return x.parts() < y.parts();
}

DiagramPoly::DiagramPoly(const Composition& c, const Scalar& coeff) { add_term(c, coeff); }

Scalar DiagramPoly::coefficient(const Composition& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<unsigned> DiagramPoly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = terms_.begin()->first.degree();
    for (const auto& [c, v] : terms_)
        if (c.degree() != d) return std::nullopt;
    return d;
}

void DiagramPoly::add_term(const Composition& c, const Scalar& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(c, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

DiagramPoly& DiagramPoly::operator+=(const DiagramPoly& other) {
    for (const auto& [c, v] : other.terms_) add_term(c, v);
    return *this;
}

DiagramPoly& DiagramPoly::operator-=(const DiagramPoly& other) {
    for (const auto& [c, v] : other.terms_) add_term(c, -v);
    return *this;
}

DiagramPoly& DiagramPoly::operator*=(const Scalar& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [c, v] : terms_) v *= s;
    return *this;
}

DiagramPoly operator*(const DiagramPoly& a, const DiagramPoly& b) {
    DiagramPoly r;
    for (const auto& [ca, va] : a.terms_)
        for (const auto& [cb, vb] : b.terms_) r.add_term(ca.concat(cb), va * vb);
    return r;
}

DiagramPoly delta(const DiagramPoly& d) {
    DiagramPoly out;
    for (const auto& [c, v] : d.terms()) {
        const auto& parts = c.parts();
        for (std::size_t j = 0; j < parts.size(); ++j) {
            std::vector<unsigned> next = parts;
            if (--next[j] == 0) next.erase(next.begin() + static_cast<long>(j));
            out.add_term(Composition(std::move(next)), v * parts[j]);
        }
    }
    return out;
}

DiagramPoly delta_power(const DiagramPoly& d, unsigned k) {
    DiagramPoly r = d;
    for (unsigned i = 0; i < k; ++i) r = delta(r);
    return r;
}

DiagramPoly diagram_mul(const DiagramPoly& a, const DiagramPoly& b) { return a * b; }

DiagramPoly diagram_commutator(const DiagramPoly& a, const DiagramPoly& b) { return a * b - b * a; }

namespace {

Composition hook(unsigned r, unsigned s) {
    std::vector<unsigned> parts;
    if (r > 0) parts.push_back(r);
    parts.insert(parts.end(), s, 1u);
    return Composition(std::move(parts));
}

void check_degree(unsigned n, unsigned lo) {
    if (n < lo) throw DomainError("degree " + std::to_string(n) + " below minimum " + std::to_string(lo));
    if (n > kMaxDegree)
        throw DomainError("degree " + std::to_string(n) + " exceeds the memory guard (" + std::to_string(kMaxDegree) + ")");
}

} // namespace

DiagramPoly fundamental(unsigned n) {
    if (n < 2) throw DomainError("no invariants below degree 2");
    DiagramPoly d;
    for (unsigned s = 0; s <= n; ++s) {
        Scalar c = Scalar(binomial(n, s));
        if (s % 2) c = -c;
        // s = n gives (0, 1^n), identified with (1, 1^{n-1})
        d.add_term(hook(n - s, s), c);
    }
    return d;
}

DiagramPoly derived_invariant(unsigned n, unsigned p) {
    DiagramPoly d = fundamental(n);
    const DiagramPoly box(Composition{1});
    for (unsigned i = 0; i < p; ++i) d = diagram_commutator(box, d);
    return d;
}

unsigned trailing_ones(const Composition& c) {
    unsigned t = 0;
    for (auto it = c.parts().rbegin(); it != c.parts().rend() && *it == 1; ++it) ++t;
    return t;
}

namespace {

std::map<Composition, std::size_t> basis_index(unsigned n) {
    std::map<Composition, std::size_t> idx;
    auto comps = compositions(n);
    for (std::size_t i = 0; i < comps.size(); ++i) idx.emplace(comps[i], i);
    return idx;
}

// Integer row proportional to a homogeneous diagram polynomial.
linalg::SparseVector integer_row(const DiagramPoly& d, const std::map<Composition, std::size_t>& idx) {
    Integer l = 1;
    for (const auto& [c, v] : d.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    linalg::SparseVector row;
    for (const auto& [c, v] : d.terms()) {
        auto it = idx.find(c);
        if (it == idx.end()) throw DomainError("diagram of unexpected degree in rank computation");
        Scalar scaled = v * Scalar(l);
        row.push_back({it->second, scaled.get_num()});
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.col < y.col; });
    return row;
}

} // namespace

linalg::SparseMatrix delta_matrix(unsigned n) {
    check_degree(n, 1);
    auto cols = compositions(n);
    auto row_idx = basis_index(n - 1);
    linalg::SparseMatrix m(row_idx.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const DiagramPoly image = delta(DiagramPoly(cols[j]));
        for (const auto& [c, v] : image.terms()) m.add(row_idx.at(c), j, v.get_num());
    }
    return m;
}

std::vector<std::size_t> delta_pivot_order(unsigned n) {
    auto cols = compositions(n);
    std::vector<std::size_t> order(cols.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return trailing_ones(cols[x]) > trailing_ones(cols[y]);
    });
    return order;
}

std::vector<DiagramPoly> kernel_basis(unsigned n, Execution exec) {
    check_degree(n, 2);
    auto cols = compositions(n);
    auto null = linalg::nullspace(delta_matrix(n), exec, delta_pivot_order(n));
    std::vector<DiagramPoly> basis;
    basis.reserve(null.size());
    for (const auto& v : null) {
        DiagramPoly d;
        for (const auto& e : v) d.add_term(cols[e.col], Scalar(e.value));
        if (d.terms().begin()->second < 0) d *= Scalar(-1);
        basis.push_back(std::move(d));
    }
    return basis;
}

std::size_t delta_rank(unsigned n, Execution exec) {
    check_degree(n, 1);
    return linalg::rank(delta_matrix(n), exec, delta_pivot_order(n));
}

std::vector<DiagramPoly> generator_products(unsigned n) {
    check_degree(n, 2);
    // blocks[q]: the q-1 derived invariants of degree q
    std::vector<std::vector<DiagramPoly>> blocks(n + 1);
    for (unsigned q = 2; q <= n; ++q)
        for (unsigned m = 2; m <= q; ++m) blocks[q].push_back(derived_invariant(m, q - m));

    std::vector<DiagramPoly> out;
    std::function<void(unsigned, const DiagramPoly&)> rec = [&](unsigned remaining, const DiagramPoly& prefix) {
        if (remaining == 0) {
            out.push_back(prefix);
            return;
        }
        for (unsigned q = 2; q <= remaining; ++q)
            for (const auto& b : blocks[q]) rec(remaining - q, prefix * b);
    };
    rec(n, DiagramPoly(Composition{}));
    return out;
}

std::size_t diagram_rank(const std::vector<DiagramPoly>& family, unsigned n, Execution exec) {
    check_degree(n, 1);
    auto idx = basis_index(n);
    linalg::SparseMatrix m(family.size(), idx.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (const auto& e : integer_row(family[i], idx)) m.add(i, e.col, e.value);
    return linalg::rank(m, exec);
}

std::size_t generated_kernel_rank(unsigned n, Execution exec) {
    return diagram_rank(generator_products(n), n, exec);
}

DiagramPoly symmetric_projection(const DiagramPoly& d) {
    if (d.is_zero()) return d;
    if (!d.homogeneous_degree()) throw DomainError("symmetric projection needs a homogeneous diagram polynomial");
    DiagramPoly out;
    for (const auto& [c, v] : d.terms()) {
        std::vector<unsigned> parts = c.parts();
        std::sort(parts.begin(), parts.end());
        std::vector<std::vector<unsigned>> arrangements;
        do {
            arrangements.push_back(parts);
        } while (std::next_permutation(parts.begin(), parts.end()));
        Scalar w = v / Scalar(static_cast<long>(arrangements.size()));
        for (auto& a : arrangements) out.add_term(Composition(std::move(a)), w);
    }
    return out;
}

bool is_symmetric(const DiagramPoly& d) {
    for (const auto& [c, v] : d.terms()) {
        std::vector<unsigned> parts = c.parts();
        std::sort(parts.begin(), parts.end());
        do {
            if (d.coefficient(Composition(parts)) != v) return false;
        } while (std::next_permutation(parts.begin(), parts.end()));
    }
    return true;
}

std::size_t symmetric_dimension(unsigned n) {
    std::vector<DiagramPoly> images;
    for (const auto& c : compositions(n)) images.push_back(symmetric_projection(DiagramPoly(c)));
    return diagram_rank(images, n);
}

std::size_t symmetric_delta_rank(unsigned n) {
    check_degree(n, 2);
    std::vector<DiagramPoly> images;
    for (const auto& c : compositions(n)) images.push_back(delta(symmetric_projection(DiagramPoly(c))));
    return diagram_rank(images, n - 1);
}

} // namespace laplace
