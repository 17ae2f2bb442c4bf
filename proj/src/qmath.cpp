// SPDX-License-Identifier: Apache-2.0

#include "probewit/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace probewit {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw UsageError("CMatrix: negative dimension");
  data_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

static void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw UsageError(std::string(op) + ": shape mismatch");
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "operator+");
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "operator-");
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("operator*: inner dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

Complex trace(const CMatrix& a) {
  if (a.rows() != a.cols()) throw UsageError("trace: matrix not square");
  Complex t = 0.0;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

void ensure_finite(const CMatrix& a, const std::string& what) {
  for (const Complex& z : a.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ContractError(what + ": non-finite entry");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const long rows = static_cast<long>(a.rows()) * b.rows();
  const long cols = static_cast<long>(a.cols()) * b.cols();
  if (rows > kMaxDim || cols > kMaxDim)
    throw UsageError("kron: composite dimension exceeds supported maximum (16)");
  CMatrix out(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

int SpaceLayout::dim() const {
  int d = 1;
  for (int f : factors) d *= f;
  return d;
}

SpaceLayout make_layout(std::vector<int> factors, std::vector<std::string> labels) {
  if (factors.empty() || factors.size() != labels.size())
    throw UsageError("make_layout: factors/labels size mismatch");
  int d = 1;
  for (int f : factors) {
    if (f < 1) throw UsageError("make_layout: factor dimension must be positive");
    d *= f;
    if (d > kMaxDim) throw UsageError("make_layout: dimension exceeds supported maximum (16)");
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw UsageError("make_layout: duplicate labels");
  return SpaceLayout{std::move(factors), std::move(labels)};
}

CMatrix partial_trace(const CMatrix& a, const SpaceLayout& layout,
                      const std::vector<std::string>& keep) {
  const int n = layout.dim();
  if (a.rows() != n || a.cols() != n)
    throw UsageError("partial_trace: matrix does not match layout dimension");
  if (keep.empty()) throw UsageError("partial_trace: keep set is empty");

  const int nf = static_cast<int>(layout.factors.size());
  std::vector<bool> kept(nf, false);
  for (const std::string& label : keep) {
    auto it = std::find(layout.labels.begin(), layout.labels.end(), label);
    if (it == layout.labels.end())
      throw UsageError("partial_trace: label '" + label + "' not in layout");
    kept[it - layout.labels.begin()] = true;
  }

  // Strides of each factor within the composite index (first factor slow).
  std::vector<int> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * layout.factors[f + 1];

  int dim_keep = 1, dim_tr = 1;
  for (int f = 0; f < nf; ++f) (kept[f] ? dim_keep : dim_tr) *= layout.factors[f];

  // Map a (kept, traced) digit pair to the full composite index.
  auto compose = [&](int ik, int it) {
    int full = 0;
    for (int f = nf - 1; f >= 0; --f) {
      const int d = layout.factors[f];
      int digit;
      if (kept[f]) {
        digit = ik % d;
        ik /= d;
      } else {
        digit = it % d;
        it /= d;
      }
      full += digit * stride[f];
    }
    return full;
  };

  CMatrix out(dim_keep, dim_keep);
  for (int i = 0; i < dim_keep; ++i)
    for (int j = 0; j < dim_keep; ++j) {
      Complex s = 0.0;
      for (int t = 0; t < dim_tr; ++t) s += a(compose(i, t), compose(j, t));
      out(i, j) = s;
    }
  return out;
}

static double offdiag_frobenius(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

EigResult eig_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols()) throw UsageError("eig_hermitian: matrix not square");
  if (a.rows() > kMaxDim) throw UsageError("eig_hermitian: dimension exceeds supported maximum");
  if (!is_hermitian(a, 1e-12)) throw ContractError("eig_hermitian: matrix not Hermitian");

  const int n = a.rows();
  CMatrix d = a;
  CMatrix v = CMatrix::identity(n);

  // Symmetrize away the representation noise so the iteration works on an
  // exactly Hermitian matrix.
  for (int i = 0; i < n; ++i) {
    d(i, i) = Complex(d(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex m = 0.5 * (d(i, j) + std::conj(d(j, i)));
      d(i, j) = m;
      d(j, i) = std::conj(m);
    }
  }

  const double threshold = 1e-13 * std::max(1.0, frobenius(d));
  const int max_sweeps = 64;

  int sweep = 0;
  while (offdiag_frobenius(d) > threshold) {
    if (++sweep > max_sweeps) throw ContractError("eig_hermitian: Jacobi sweeps did not converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = std::abs(d(p, q));
        if (apq == 0.0) continue;

        // Unitary 2x2 rotation annihilating d(p,q): a phase factor reduces the
        // pivot to the real symmetric case, then the classic Jacobi angle.
        const Complex phase = d(p, q) / apq;
        const double tau = (d(q, q).real() - d(p, p).real()) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex spq = s * phase;        // R(p,q)
        const Complex sqp = -s * std::conj(phase);  // R(q,p)

        // Right-multiply by R: columns p and q.
        for (int i = 0; i < n; ++i) {
          const Complex dip = d(i, p), diq = d(i, q);
          d(i, p) = c * dip + sqp * diq;
          d(i, q) = spq * dip + c * diq;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + sqp * viq;
          v(i, q) = spq * vip + c * viq;
        }
        // Left-multiply by R^dagger: rows p and q.
        for (int j = 0; j < n; ++j) {
          const Complex dpj = d(p, j), dqj = d(q, j);
          d(p, j) = c * dpj + std::conj(sqp) * dqj;
          d(q, j) = std::conj(spq) * dpj + c * dqj;
        }
        d(p, q) = 0.0;
        d(q, p) = 0.0;
        d(p, p) = Complex(d(p, p).real(), 0.0);
        d(q, q) = Complex(d(q, q).real(), 0.0);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return d(i, i).real() < d(j, j).real(); });

  EigResult r;
  r.values.resize(n);
  r.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    r.values[j] = d(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[j]);
  }
  return r;
}

CMatrix expm_generator(const CMatrix& h, double angle) {
  const EigResult e = eig_hermitian(h);
  const int n = h.rows();
  CMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const Complex w = std::exp(Complex(0.0, -angle * e.values[k]));
    for (int i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k);
      if (vik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) out(i, j) += w * vik * std::conj(e.vectors(j, k));
    }
  }
  return out;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace probewit
