#pragma once

// Square matrices over CycNum with sparse row storage. Group elements of the
// built-in error groups are monomial, so rows typically hold one entry;
// projectors are denser but still far below n^2 for stabilizer-like codes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"

namespace cliffcode {

class CycMatrix {
 public:
  struct Entry {
    std::uint32_t col;
    CycNum value;
  };
  using Row = std::vector<Entry>;

  CycMatrix() = default;
  explicit CycMatrix(std::size_t n) : rows_(n) {}

  static CycMatrix identity(std::size_t n) { return scalar(n, CycNum(1)); }

  static CycMatrix scalar(std::size_t n, const CycNum& s) {
    CycMatrix m(n);
    if (s.is_zero()) return m;
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({static_cast<std::uint32_t>(i), s});
    return m;
  }

  static CycMatrix from_dense(const std::vector<std::vector<CycNum>>& dense) {
    CycMatrix m(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i].size() != dense.size()) throw InvalidArgument("matrix is not square");
      for (std::size_t j = 0; j < dense.size(); ++j) {
        if (!dense[i][j].is_zero()) m.rows_[i].push_back({static_cast<std::uint32_t>(j), dense[i][j]});
      }
    }
    return m;
  }

  std::size_t size() const { return rows_.size(); }
  const Row& row(std::size_t i) const { return rows_[i]; }

  CycNum at(std::size_t i, std::size_t j) const {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it != r.end() && it->col == j) return it->value;
    return {};
  }

  void set(std::size_t i, std::size_t j, CycNum v) {
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
      if (v.is_zero()) r.erase(it);
      else it->value = std::move(v);
    } else if (!v.is_zero()) {
      r.insert(it, {static_cast<std::uint32_t>(j), std::move(v)});
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    check_same_size(a, b);
    const std::size_t n = a.size();
    CycMatrix out(n);
    std::vector<CycNum> acc(n);
    std::vector<char> touched(n, 0);
    std::vector<std::uint32_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
      cols.clear();
      for (const auto& [k, av] : a.rows_[i]) {
        for (const auto& [j, bv] : b.rows_[k]) {
          if (!touched[j]) {
            touched[j] = 1;
            cols.push_back(j);
            acc[j] = av * bv;
          } else {
            acc[j] += av * bv;
          }
        }
      }
      std::sort(cols.begin(), cols.end());
      auto& row = out.rows_[i];
      for (auto j : cols) {
        touched[j] = 0;
        if (!acc[j].is_zero()) row.push_back({j, std::move(acc[j])});
        acc[j] = CycNum();
      }
    }
    return out;
  }

  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) { return combine(a, b, false); }
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return combine(a, b, true); }
  CycMatrix& operator+=(const CycMatrix& o) { return *this = *this + o; }

  CycMatrix scaled(const CycNum& s) const {
    CycMatrix out(size());
    if (s.is_zero()) return out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, v] : rows_[i]) {
        CycNum p = v * s;
        if (!p.is_zero()) out.rows_[i].push_back({j, std::move(p)});
      }
    }
    return out;
  }

  /// Conjugate transpose.
  CycMatrix adjoint() const {
    CycMatrix out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, v] : rows_[i]) out.rows_[j].push_back({static_cast<std::uint32_t>(i), v.conj()});
    }
    return out;  // rows filled in increasing i, so already sorted
  }

  CycNum trace() const {
    CycNum t;
    for (std::size_t i = 0; i < size(); ++i) t += at(i, i);
    return t;
  }

  /// trace(this * other) without forming the product.
  CycNum trace_of_product(const CycMatrix& other) const {
    check_same_size(*this, other);
    CycNum t;
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, v] : rows_[i]) {
        CycNum w = other.at(j, i);
        if (!w.is_zero()) t += v * w;
      }
    }
    return t;
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

  /// If the matrix equals s * identity, returns s.
  std::optional<CycNum> as_scalar() const {
    if (size() == 0) return CycNum(0);
    std::optional<CycNum> s;
    for (std::size_t i = 0; i < size(); ++i) {
      const auto& r = rows_[i];
      if (r.empty()) {
        if (s && !s->is_zero()) return std::nullopt;
        s = CycNum();
        continue;
      }
      if (r.size() != 1 || r[0].col != i) return std::nullopt;
      if (!s) s = r[0].value;
      else if (*s != r[0].value) return std::nullopt;
    }
    return s;
  }

  bool is_hermitian() const { return *this == adjoint(); }

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& ra = a.rows_[i];
      const auto& rb = b.rows_[i];
      if (ra.size() != rb.size()) return false;
      for (std::size_t k = 0; k < ra.size(); ++k) {
        if (ra[k].col != rb[k].col || ra[k].value != rb[k].value) return false;
      }
    }
    return true;
  }
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

  /// lcm of the entry conductors.
  int conductor() const {
    int c = 1;
    for (const auto& r : rows_) {
      for (const auto& e : r) c = lcm_conductor(c, e.value.conductor());
    }
    return c;
  }

  /// Exact encoding at a conductor divisible by every entry's conductor.
  std::string key(int conductor) const {
    std::string out;
    out.reserve(nonzeros() * 24);
    for (std::size_t i = 0; i < size(); ++i) {
      out.push_back('|');
      for (const auto& [j, v] : rows_[i]) {
        out.append(reinterpret_cast<const char*>(&j), sizeof(j));
        v.append_key(out, conductor);
      }
    }
    return out;
  }

  Eigen::MatrixXcd to_complex() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, v] : rows_[i]) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v.embed();
    }
    return m;
  }

  std::vector<std::vector<CycNum>> to_dense() const {
    std::vector<std::vector<CycNum>> d(size(), std::vector<CycNum>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, v] : rows_[i]) d[i][j] = v;
    }
    return d;
  }

 private:
  static void check_same_size(const CycMatrix& a, const CycMatrix& b) {
    if (a.size() != b.size()) {
      throw InvalidArgument("matrix size mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
  }

  static CycMatrix combine(const CycMatrix& a, const CycMatrix& b, bool subtract) {
    check_same_size(a, b);
    CycMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& ra = a.rows_[i];
      const auto& rb = b.rows_[i];
      auto& ro = out.rows_[i];
      std::size_t p = 0, q = 0;
      while (p < ra.size() || q < rb.size()) {
        if (q == rb.size() || (p < ra.size() && ra[p].col < rb[q].col)) {
          ro.push_back(ra[p++]);
        } else if (p == ra.size() || rb[q].col < ra[p].col) {
          ro.push_back({rb[q].col, subtract ? -rb[q].value : rb[q].value});
          ++q;
        } else {
          CycNum v = subtract ? ra[p].value - rb[q].value : ra[p].value + rb[q].value;
          if (!v.is_zero()) ro.push_back({ra[p].col, std::move(v)});
          ++p;
          ++q;
        }
      }
    }
    return out;
  }

  std::vector<Row> rows_;
};

/// Kronecker product a (x) b.
inline CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
  const std::size_t nb = b.size();
  CycMatrix out(a.size() * nb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t bi = 0; bi < nb; ++bi) {
      for (const auto& [j, av] : a.row(i)) {
        for (const auto& [bj, bv] : b.row(bi)) out.set(i * nb + bi, j * nb + bj, av * bv);
      }
    }
  }
  return out;
}

}  // namespace cliffcode
