#pragma once

// Index labels, index sets, multi-indices and compositions, together with the
// enumerations (subsets, injections, compositions) the rest of the library
// is built on. All containers keep their elements in canonical sorted order so
// that structural equality is value equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace laplace {

using Label = std::uint32_t;

/// A variable label x_i, i >= 1.
struct Index {
    Label label;

    explicit Index(Label l);
    auto operator<=>(const Index&) const = default;
};

using LabelVector = boost::container::small_vector<Label, 8>;

/// Strictly increasing set of labels.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::initializer_list<Label> labels);
    /// Sorts the input; throws DomainError on duplicates or label 0.
    static IndexSet from_labels(const std::vector<Label>& labels);
    /// {1, ..., n}
    static IndexSet range(std::size_t n);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    Label operator[](std::size_t i) const { return elems_[i]; }
    Label max_label() const noexcept { return elems_.empty() ? 0 : elems_.back(); }

    bool contains(Label l) const noexcept;
    bool is_subset_of(const IndexSet& other) const noexcept;
    bool disjoint(const IndexSet& other) const noexcept;
    IndexSet set_union(const IndexSet& other) const;
    IndexSet minus(const IndexSet& other) const;

    std::strong_ordering operator<=>(const IndexSet& other) const noexcept;
    bool operator==(const IndexSet& other) const noexcept { return elems_ == other.elems_; }

private:
    LabelVector elems_;
};

/// Non-decreasing sequence of labels (a multiset); the empty multi-index is valid.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<Label> labels);
    static MultiIndex from_labels(std::vector<Label> labels);
    static MultiIndex from_set(const IndexSet& s);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    Label operator[](std::size_t i) const { return elems_[i]; }

    /// M ⊎ {l}
    MultiIndex with(Label l) const;
    /// M ⊎ N
    MultiIndex merged(const MultiIndex& other) const;
    /// Multiset difference; requires other to be a sub-multiset.
    MultiIndex minus(const MultiIndex& other) const;
    std::size_t count(Label l) const noexcept;
    /// Distinct labels with their multiplicities, ascending.
    std::vector<std::pair<Label, std::size_t>> grouped() const;

    std::strong_ordering operator<=>(const MultiIndex& other) const noexcept;
    bool operator==(const MultiIndex& other) const noexcept { return elems_ == other.elems_; }

private:
    LabelVector elems_;
};

/// Ordered sequence of positive parts; the empty composition is the unit diagram.
class Composition {
public:
    Composition() = default;
    Composition(std::initializer_list<unsigned> parts);
    explicit Composition(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    /// Sum of parts (number of boxes).
    unsigned degree() const noexcept;
    unsigned operator[](std::size_t i) const { return parts_[i]; }

    Composition concat(const Composition& other) const;

    auto operator<=>(const Composition&) const = default;

private:
    std::vector<unsigned> parts_;
};

/// All 2^|J| subsets, ordered by size then lexicographically.
std::vector<IndexSet> subsets(const IndexSet& j);

/// All injective maps of slots 1..m into J as label tuples, in lexicographic
/// order of the slot assignment. Throws DomainError if m > |J|.
std::vector<std::vector<Label>> injections(std::size_t m, const IndexSet& j);

/// All compositions of n in reverse-lexicographic order: [3],[2,1],[1,2],[1,1,1].
std::vector<Composition> compositions(unsigned n);

std::string to_string(const Composition& c);
std::string to_string(const IndexSet& s);

} // namespace laplace
