#include "jrc/lpfeas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jrc {

LinearSystem linearize_window(const std::vector<std::vector<double>>& window) {
  if (window.size() < 2) throw std::invalid_argument("window needs at least two points");
  LinearSystem sys;
  sys.dimension = static_cast<int>(window.front().size());
  for (std::size_t i = 0; i + 1 < window.size(); ++i) {
    const auto& a = window[i];
    const auto& b = window[i + 1];
    if (a.size() != b.size() || static_cast<int>(a.size()) != sys.dimension) {
      throw std::invalid_argument("window points differ in dimension");
    }
    std::vector<double> row(a.size());
    double rhs = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      row[d] = 2.0 * (a[d] - b[d]);
      rhs += a[d] * a[d] - b[d] * b[d];
    }
    sys.coefficients.push_back(std::move(row));
    sys.rhs.push_back(rhs);
  }
  return sys;
}

namespace {

// Dense tableau for: minimize sum of artificials subject to
//   a_i.(x+ - x-) + s_i (- art_i) = b_i, all variables >= 0.
class Phase1 {
 public:
  Phase1(const std::vector<std::vector<double>>& A, const std::vector<double>& b, int n, double tol)
      : m_(static_cast<int>(A.size())), n_(n), tol_(tol) {
    // columns: x+ (n), x- (n), slack (m), artificial (m)
    cols_ = 2 * n_ + 2 * m_;
    tab_.assign(static_cast<std::size_t>(m_ + 1), std::vector<double>(static_cast<std::size_t>(cols_ + 1), 0.0));
    basis_.assign(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      auto& row = tab_[static_cast<std::size_t>(i)];
      const double sign = b[static_cast<std::size_t>(i)] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) {
        row[static_cast<std::size_t>(j)] = sign * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n_ + j)] = -sign * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      row[static_cast<std::size_t>(2 * n_ + i)] = sign;
      row[static_cast<std::size_t>(cols_)] = sign * b[static_cast<std::size_t>(i)];
      if (sign > 0) {
        basis_[static_cast<std::size_t>(i)] = 2 * n_ + i;  // slack is a feasible basic column
      } else {
        row[static_cast<std::size_t>(2 * n_ + m_ + i)] = 1.0;
        basis_[static_cast<std::size_t>(i)] = 2 * n_ + m_ + i;
      }
    }
    // Objective row holds reduced costs of "minimize sum artificials".
    auto& obj = tab_[static_cast<std::size_t>(m_)];
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < 2 * n_ + m_) continue;
      const auto& row = tab_[static_cast<std::size_t>(i)];
      for (int j = 0; j <= cols_; ++j) {
        if (j >= 2 * n_ + m_ && j < cols_) continue;
        obj[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
      }
    }
  }

  bool solve() {
    for (;;) {
      auto& obj = tab_[static_cast<std::size_t>(m_)];
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (obj[static_cast<std::size_t>(j)] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (a <= tol_) continue;
        const double ratio = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)] / a;
        if (leave < 0 || ratio < best - tol_ ||
            (std::abs(ratio - best) <= tol_ && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) break;  // unbounded cannot happen for phase 1
      pivot(leave, enter);
    }
    return -tab_[static_cast<std::size_t>(m_)][static_cast<std::size_t>(cols_)] <= tol_ * std::max(1.0, static_cast<double>(m_));
  }

  std::vector<double> point() const {
    std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      const double value = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)];
      if (j < n_) x[static_cast<std::size_t>(j)] += value;
      else if (j < 2 * n_) x[static_cast<std::size_t>(j - n_)] -= value;
    }
    return x;
  }

 private:
  void pivot(int r, int c) {
    auto& prow = tab_[static_cast<std::size_t>(r)];
    const double div = prow[static_cast<std::size_t>(c)];
    for (auto& v : prow) v /= div;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      auto& row = tab_[static_cast<std::size_t>(i)];
      const double f = row[static_cast<std::size_t>(c)];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  int m_, n_, cols_;
  double tol_;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;
};

}  // namespace

FeasibilityResult is_feasible(const LinearSystem& system, double tolerance) {
  const int n = system.dimension;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t i = 0; i < system.coefficients.size(); ++i) {
    const auto& row = system.coefficients[i];
    double scale = 0.0;
    for (double a : row) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) {
      if (system.rhs[i] >= -1e-12) continue;
      return {false, {}};
    }
    std::vector<double> normalized(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) normalized[j] = row[j] / scale;
    A.push_back(std::move(normalized));
    b.push_back(system.rhs[i] / scale);
  }
  if (A.empty()) return {true, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  Phase1 lp(A, b, n, tolerance);
  if (!lp.solve()) return {false, {}};
  return {true, lp.point()};
}

}  // namespace jrc
