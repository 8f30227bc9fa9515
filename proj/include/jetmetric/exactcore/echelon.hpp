#pragma once

// Incremental row echelon over sparse rows. Used wherever rows arrive one at a
// time (Macaulay matrices, spans of products, syzygy bookkeeping): each
// inserted row is fully reduced against the current pivots, so rank and
// membership queries are exact at any point.

#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "jetmetric/exactcore/field.hpp"

namespace jetmetric::exact {

template <class F>
using SparseVec = std::vector<std::pair<std::uint32_t, typename F::Element>>;

template <class F>
SparseVec<F> to_sparse(const F&, const std::vector<typename F::Element>& v) {
  SparseVec<F> out;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (!F::is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

template <class F>
std::vector<typename F::Element> to_dense(const F& f, const SparseVec<F>& v, std::size_t n) {
  std::vector<typename F::Element> out(n, f.zero());
  for (const auto& [c, e] : v) out[c] = e;
  return out;
}

template <class F>
class Echelon {
 public:
  using Element = typename F::Element;
  using Row = SparseVec<F>;

  Echelon(F field, std::size_t ncols)
      : field_(std::move(field)), ncols_(ncols), pivot_row_(ncols, -1), acc_(ncols, field_.zero()), queued_(ncols, 0) {}

  const F& field() const { return field_; }
  std::size_t cols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::uint32_t c) const { return pivot_row_[c] >= 0; }
  // Rows have leading coefficient 1 at their pivot column.
  const std::vector<Row>& rows() const { return rows_; }
  const Row& pivot_row(std::uint32_t c) const { return rows_[static_cast<std::size_t>(pivot_row_[c])]; }

  // Remainder of v after eliminating every pivot column; sorted by column.
  Row reduce(const Row& v) {
    for (const auto& [c, e] : v) {
      acc_[c] = field_.add(acc_[c], e);
      push(c);
    }
    Row out;
    while (!heap_.empty()) {
      const std::uint32_t c = heap_.top();
      heap_.pop();
      queued_[c] = 0;
      if (F::is_zero(acc_[c])) continue;
      const auto pr = pivot_row_[c];
      if (pr < 0) {
        out.emplace_back(c, std::move(acc_[c]));
        acc_[c] = field_.zero();
        continue;
      }
      const Element factor = field_.neg(acc_[c]);
      acc_[c] = field_.zero();
      const Row& row = rows_[static_cast<std::size_t>(pr)];
      for (std::size_t k = 1; k < row.size(); ++k) {
        const auto col = row[k].first;
        field_.axpy(acc_[col], factor, row[k].second);
        push(col);
      }
    }
    return out;
  }

  bool contains(const Row& v) { return reduce(v).empty(); }

  // Adds v to the span; returns true when the rank grows.
  bool insert(const Row& v) {
    Row r = reduce(v);
    if (r.empty()) return false;
    const Element inv = field_.inv(r.front().second);
    for (auto& [c, e] : r) e = field_.mul(e, inv);
    pivot_row_[r.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(r));
    reduced_ = false;
    return true;
  }

  // Bring every row to reduced form (no pivot column appears in any tail).
  void back_substitute() {
    if (reduced_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first > rows_[b].front().first; });
    for (auto idx : order) {
      Row& row = rows_[idx];
      const auto lead = row.front();
      Row tail(row.begin() + 1, row.end());
      Row red = reduce(tail);
      row.clear();
      row.push_back(lead);
      row.insert(row.end(), red.begin(), red.end());
    }
    reduced_ = true;
  }

 private:
  void push(std::uint32_t c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      heap_.push(c);
    }
  }

  F field_;
  std::size_t ncols_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_row_;
  std::vector<Element> acc_;
  std::vector<char> queued_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
  bool reduced_ = true;
};

// Kernel of the linear map sending the j-th source basis vector to images[j]
// (sparse, over `target_dim` coordinates). Rows of an augmented echelon
// [image | e_j] whose image part reduces to zero are kernel vectors.
template <class F>
std::vector<SparseVec<F>> kernel_of_images(const F& field, const std::vector<SparseVec<F>>& images,
                                           std::size_t target_dim) {
  const auto n = images.size();
  Echelon<F> ech(field, target_dim + n);
  std::vector<SparseVec<F>> kernel;
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec<F> row = images[j];
    row.emplace_back(static_cast<std::uint32_t>(target_dim + j), field.one());
    auto red = ech.reduce(row);
    if (red.empty()) continue;
    if (red.front().first >= target_dim) {
      SparseVec<F> k;
      for (const auto& [c, e] : red) k.emplace_back(static_cast<std::uint32_t>(c - target_dim), e);
      kernel.push_back(std::move(k));
    }
    ech.insert(red);
  }
  return kernel;
}

// Rank of a family of sparse vectors.
template <class F>
std::size_t sparse_rank(const F& field, const std::vector<SparseVec<F>>& rows, std::size_t ncols) {
  Echelon<F> ech(field, ncols);
  for (const auto& r : rows) ech.insert(r);
  return ech.rank();
}

}  // namespace jetmetric::exact
