#include "laplace/index.hpp"

#include <algorithm>

#include "laplace/errors.hpp"

namespace laplace {

namespace {

std::strong_ordering compare_labels(const LabelVector& a, const LabelVector& b) noexcept {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

void check_label(Label l) {
    if (l == 0) throw DomainError("index label must be >= 1");
}

} // namespace

Index::Index(Label l) : label(l) { check_label(l); }

// IndexSet

IndexSet::IndexSet(std::initializer_list<Label> labels)
    : IndexSet(from_labels(std::vector<Label>(labels))) {}

IndexSet IndexSet::from_labels(const std::vector<Label>& labels) {
    IndexSet s;
    s.elems_.assign(labels.begin(), labels.end());
    std::sort(s.elems_.begin(), s.elems_.end());
    for (auto l : s.elems_) check_label(l);
    if (std::adjacent_find(s.elems_.begin(), s.elems_.end()) != s.elems_.end())
        throw DomainError("duplicate label in index set");
    return s;
}

IndexSet IndexSet::range(std::size_t n) {
    IndexSet s;
    for (std::size_t i = 1; i <= n; ++i) s.elems_.push_back(static_cast<Label>(i));
    return s;
}

bool IndexSet::contains(Label l) const noexcept {
    return std::binary_search(elems_.begin(), elems_.end(), l);
}

bool IndexSet::is_subset_of(const IndexSet& other) const noexcept {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

bool IndexSet::disjoint(const IndexSet& other) const noexcept {
    auto a = elems_.begin();
    auto b = other.elems_.begin();
    while (a != elems_.end() && b != other.elems_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
    IndexSet r;
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(r.elems_));
    return r;
}

IndexSet IndexSet::minus(const IndexSet& other) const {
    IndexSet r;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(r.elems_));
    return r;
}

std::strong_ordering IndexSet::operator<=>(const IndexSet& other) const noexcept {
    return compare_labels(elems_, other.elems_);
}

// MultiIndex

MultiIndex::MultiIndex(std::initializer_list<Label> labels)
    : MultiIndex(from_labels(std::vector<Label>(labels))) {}

MultiIndex MultiIndex::from_labels(std::vector<Label> labels) {
    MultiIndex m;
    std::sort(labels.begin(), labels.end());
    for (auto l : labels) check_label(l);
    m.elems_.assign(labels.begin(), labels.end());
    return m;
}

MultiIndex MultiIndex::from_set(const IndexSet& s) {
    MultiIndex m;
    m.elems_.assign(s.begin(), s.end());
    return m;
}

MultiIndex MultiIndex::with(Label l) const {
    check_label(l);
    MultiIndex m = *this;
    m.elems_.insert(std::upper_bound(m.elems_.begin(), m.elems_.end(), l), l);
    return m;
}

MultiIndex MultiIndex::merged(const MultiIndex& other) const {
    MultiIndex m;
    m.elems_.reserve(size() + other.size());
    std::merge(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
               std::back_inserter(m.elems_));
    return m;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
    if (!std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end()))
        throw DomainError("multi-index difference: not a sub-multiset");
    MultiIndex m;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(m.elems_));
    return m;
}

std::size_t MultiIndex::count(Label l) const noexcept {
    auto [lo, hi] = std::equal_range(elems_.begin(), elems_.end(), l);
    return static_cast<std::size_t>(hi - lo);
}

std::vector<std::pair<Label, std::size_t>> MultiIndex::grouped() const {
    std::vector<std::pair<Label, std::size_t>> out;
    for (auto l : elems_) {
        if (!out.empty() && out.back().first == l) ++out.back().second;
        else out.emplace_back(l, 1);
    }
    return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const noexcept {
    return compare_labels(elems_, other.elems_);
}

// Composition

Composition::Composition(std::initializer_list<unsigned> parts)
    : Composition(std::vector<unsigned>(parts)) {}

Composition::Composition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    for (auto p : parts_)
        if (p == 0) throw DomainError("composition part must be >= 1");
}

unsigned Composition::degree() const noexcept {
    unsigned d = 0;
    for (auto p : parts_) d += p;
    return d;
}

Composition Composition::concat(const Composition& other) const {
    Composition c;
    c.parts_ = parts_;
    c.parts_.insert(c.parts_.end(), other.parts_.begin(), other.parts_.end());
    return c;
}

// Enumerations

std::vector<IndexSet> subsets(const IndexSet& j) {
    const std::size_t n = j.size();
    std::vector<IndexSet> out;
    out.reserve(std::size_t{1} << n);
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k <= n; ++k) {
        // combinations of k positions in lexicographic order
        pos.resize(k);
        for (std::size_t i = 0; i < k; ++i) pos[i] = i;
        while (true) {
            std::vector<Label> labels;
            labels.reserve(k);
            for (auto p : pos) labels.push_back(j[p]);
            out.push_back(IndexSet::from_labels(labels));
            std::size_t i = k;
            while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++pos[i - 1];
            for (std::size_t t = i; t < k; ++t) pos[t] = pos[t - 1] + 1;
        }
    }
    return out;
}

std::vector<std::vector<Label>> injections(std::size_t m, const IndexSet& j) {
    const std::size_t n = j.size();
    if (m > n) throw DomainError("pattern longer than index set");
    std::vector<std::vector<Label>> out;
    std::vector<Label> current;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
        if (current.size() == m) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            current.push_back(j[i]);
            self(self);
            current.pop_back();
            used[i] = false;
        }
    };
    rec(rec);
    return out;
}

std::vector<Composition> compositions(unsigned n) {
    std::vector<Composition> out;
    std::vector<unsigned> current;
    auto rec = [&](auto&& self, unsigned remaining) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (unsigned first = remaining; first >= 1; --first) {
            current.push_back(first);
            self(self, remaining - first);
            current.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

std::string to_string(const Composition& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.length(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

std::string to_string(const IndexSet& set) {
    std::string s = "{";
    bool first = true;
    for (auto l : set) {
        if (!first) s += ',';
        first = false;
        s += std::to_string(l);
    }
    return s + "}";
}

} // namespace laplace
