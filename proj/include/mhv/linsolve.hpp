#ifndef MHV_LINSOLVE_HPP
#define MHV_LINSOLVE_HPP

#include "mhv/errors.hpp"
#include "mhv/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace mhv::linalg {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

/// Rescales a row to a canonical primitive form without changing its span.
/// For a general field this divides by the leading entry; the Rational
/// specialization clears denominators and removes the integer content instead,
/// which keeps fraction-free elimination from growing entries.
template <typename Scalar>
struct RowNormalizer {
  template <typename Row>
  static void apply(Row&& row) {
    for (Index j = 0; j < row.size(); ++j) {
      if (row(j) != Scalar(0)) {
        const Scalar lead = row(j);
        row /= lead;
        return;
      }
    }
  }
};

template <>
struct RowNormalizer<Rational> {
  template <typename Row>
  static void apply(Row&& row) {
    Integer lcm_den(1);
    for (Index j = 0; j < row.size(); ++j) {
      if (!row(j).is_zero()) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(row(j)));
    }
    Integer content(0);
    Index lead = -1;
    for (Index j = 0; j < row.size(); ++j) {
      if (row(j).is_zero()) continue;
      if (lead < 0) lead = j;
      const Integer n = numerator(row(j)) * (lcm_den / denominator(row(j)));
      content = boost::multiprecision::gcd(content, n);
    }
    if (lead < 0) return;
    if (row(lead) < 0) content = -content;
    const Rational scale(lcm_den, content);
    if (scale != 1) row *= scale;
  }
};

template <typename Scalar>
struct RrefResult {
  Matrix<Scalar> reduced;      // same shape as the input
  Index rank = 0;
  std::vector<Index> pivots;   // pivot column of each nonzero row, ascending
};

/// Exact reduced row echelon form. Forward elimination is fraction-free
/// (cross-multiplication followed by row normalization); pivots are scaled to
/// one and cleared upwards at the end. Pivot = first nonzero in column order.
template <typename Derived>
RrefResult<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  RrefResult<Scalar> out;
  Matrix<Scalar> a = input;
  const Index rows = a.rows();
  const Index cols = a.cols();
  for (Index i = 0; i < rows; ++i) RowNormalizer<Scalar>::apply(a.row(i));

  Index r = 0;
  for (Index col = 0; col < cols && r < rows; ++col) {
    Index sel = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, col) != Scalar(0)) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r) a.row(sel).swap(a.row(r));
    const Scalar pivot = a(r, col);
    for (Index i = r + 1; i < rows; ++i) {
      if (a(i, col) == Scalar(0)) continue;
      const Scalar factor = a(i, col);
      a.row(i) = pivot * a.row(i) - factor * a.row(r);
      RowNormalizer<Scalar>::apply(a.row(i));
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rank = r;

  for (Index k = r - 1; k >= 0; --k) {
    const Index pc = out.pivots[static_cast<std::size_t>(k)];
    const Scalar pivot = a(k, pc);
    a.row(k) /= pivot;
    for (Index i = 0; i < k; ++i) {
      if (a(i, pc) == Scalar(0)) continue;
      const Scalar factor = a(i, pc);
      a.row(i) -= factor * a.row(k);
    }
  }
  out.reduced = std::move(a);
  return out;
}

template <typename Scalar>
struct KernelBasis {
  std::vector<Vector<Scalar>> vectors;  // ordered by free column index
  Index rank = 0;
};

namespace detail {

// Null space read off an RREF: one vector per free column.
template <typename Scalar>
KernelBasis<Scalar> kernel_from_rref(const Matrix<Scalar>& reduced, const std::vector<Index>& pivots,
                                     Index cols) {
  KernelBasis<Scalar> out;
  out.rank = static_cast<Index>(pivots.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<Scalar> v = Vector<Scalar>::Zero(cols);
    v(f) = Scalar(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k]) = -reduced(static_cast<Index>(k), f);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Exact null-space basis via free-variable back-substitution. Every vector is
/// re-checked against the input and rank + nullity = cols is asserted.
template <typename Derived>
KernelBasis<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto r = rref(m);
  auto out = detail::kernel_from_rref<Scalar>(r.reduced, r.pivots, m.cols());
  for (const auto& v : out.vectors) {
    const Vector<Scalar> image = m * v;
    for (Index i = 0; i < image.size(); ++i) {
      if (image(i) != Scalar(0)) throw ConsistencyError("kernel vector fails M*v = 0");
    }
  }
  if (out.rank + static_cast<Index>(out.vectors.size()) != m.cols()) {
    throw ConsistencyError("rank-nullity violated");
  }
  return out;
}

/// Stacks vectors as the columns of a matrix.
template <typename Scalar>
Matrix<Scalar> columns(const std::vector<Vector<Scalar>>& vs, Index length) {
  Matrix<Scalar> m(length, static_cast<Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != length) throw InvalidArgument("vector length mismatch");
    m.col(static_cast<Index>(j)) = vs[j];
  }
  return m;
}

template <typename Scalar>
Index rank_of(const std::vector<Vector<Scalar>>& vs) {
  if (vs.empty()) return 0;
  return rref(columns(vs, vs.front().size()).transpose()).rank;
}

/// Coordinates c with sum_i c_i S_i = v, or nullopt when v is not in span(S).
/// Free coordinates are set to zero.
template <typename Scalar>
std::optional<Vector<Scalar>> membership(const Vector<Scalar>& v, const std::vector<Vector<Scalar>>& span) {
  const Index n = v.size();
  const Index k = static_cast<Index>(span.size());
  Matrix<Scalar> aug(n, k + 1);
  if (k > 0) aug.leftCols(k) = columns(span, n);
  aug.col(k) = v;
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == k) return std::nullopt;
  Vector<Scalar> coords = Vector<Scalar>::Zero(k);
  for (std::size_t row = 0; row < r.pivots.size(); ++row) {
    coords(r.pivots[row]) = r.reduced(static_cast<Index>(row), k);
  }
  return coords;
}

/// dim span(A) - dim span(B); B must lie in span(A).
template <typename Scalar>
Index quotient_dim(const std::vector<Vector<Scalar>>& a, const std::vector<Vector<Scalar>>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!membership(b[i], a)) {
      std::ostringstream os;
      os << "vector " << i << " of the subspace is not in span(A): [" << b[i].transpose() << "]";
      throw ContainmentError(i, os.str());
    }
  }
  return rank_of(a) - rank_of(b);
}

/// Incremental echelon form over sparse rows. Built for the large, very sparse
/// Leibniz systems: rows are reduced on insertion, so the stored set never
/// exceeds the rank.
template <typename Scalar>
class EchelonBuilder {
 public:
  using SparseRow = std::vector<std::pair<Index, Scalar>>;  // strictly increasing columns

  explicit EchelonBuilder(Index cols) : cols_(cols) {}

  Index cols() const noexcept { return cols_; }
  Index rank() const noexcept { return static_cast<Index>(rows_.size()); }

  /// Returns true when the row was independent of those already added.
  bool add_row(SparseRow row) {
    canonicalize(row);
    normalize(row);
    auto it = rows_.begin();
    while (!row.empty()) {
      const Index lead = row.front().first;
      it = std::lower_bound(it, rows_.end(), lead,
                            [](const SparseRow& r, Index c) { return r.front().first < c; });
      if (it == rows_.end() || it->front().first != lead) break;
      row = combine(it->front().second, row, -row.front().second, *it);
      normalize(row);
    }
    if (row.empty()) return false;
    // Entries after the leading column may still hit later pivots; those are
    // cleared in reduced().
    rows_.insert(it, std::move(row));
    return true;
  }

  bool add_row(const Vector<Scalar>& dense) {
    SparseRow row;
    for (Index j = 0; j < dense.size(); ++j) {
      if (dense(j) != Scalar(0)) row.emplace_back(j, dense(j));
    }
    return add_row(std::move(row));
  }

  /// Fully reduced rows (rank x cols) and their pivot columns.
  RrefResult<Scalar> reduced() const {
    std::vector<SparseRow> rs = rows_;
    for (std::size_t k = rs.size(); k-- > 0;) {
      const Scalar lead = rs[k].front().second;
      for (auto& e : rs[k]) e.second /= lead;
      const Index pc = rs[k].front().first;
      for (std::size_t i = 0; i < k; ++i) {
        const Scalar f = coefficient(rs[i], pc);
        if (f == Scalar(0)) continue;
        rs[i] = combine(Scalar(1), rs[i], -f, rs[k]);
      }
    }
    RrefResult<Scalar> out;
    out.rank = static_cast<Index>(rs.size());
    out.reduced = Matrix<Scalar>::Zero(out.rank, cols_);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      out.pivots.push_back(rs[k].front().first);
      for (const auto& [j, v] : rs[k]) out.reduced(static_cast<Index>(k), j) = v;
    }
    return out;
  }

  KernelBasis<Scalar> kernel() const {
    const auto r = reduced();
    return detail::kernel_from_rref<Scalar>(r.reduced, r.pivots, cols_);
  }

 private:
  static Scalar coefficient(const SparseRow& row, Index col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, Index c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? it->second : Scalar(0);
  }

  // sa * a + sb * b
  static SparseRow combine(const Scalar& sa, const SparseRow& a, const Scalar& sb, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        out.emplace_back(ia->first, sa * ia->second);
        ++ia;
      } else if (ia == a.end() || ib->first < ia->first) {
        out.emplace_back(ib->first, sb * ib->second);
        ++ib;
      } else {
        Scalar v = sa * ia->second + sb * ib->second;
        if (v != Scalar(0)) out.emplace_back(ia->first, std::move(v));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  // Sorted by column, duplicates merged, zeros dropped.
  static void canonicalize(SparseRow& row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    out.reserve(row.size());
    for (auto& e : row) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(std::move(e));
      }
      if (out.back().second == Scalar(0)) out.pop_back();
    }
    row = std::move(out);
  }

  static void normalize(SparseRow& row) {
    if (row.empty()) return;
    Vector<Scalar> vals(static_cast<Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) vals(static_cast<Index>(i)) = row[i].second;
    RowNormalizer<Scalar>::apply(vals);
    for (std::size_t i = 0; i < row.size(); ++i) row[i].second = vals(static_cast<Index>(i));
  }

  Index cols_;
  std::vector<SparseRow> rows_;  // sorted by leading column
};

}  // namespace mhv::linalg

#endif  // MHV_LINSOLVE_HPP
