// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrix kernel for small composite quantum systems.
//
// Everything in here targets dimensions up to kMaxDim (16), i.e. two qubits
// plus a two-level probe.  Matrices are stored row-major.  Composite indices
// follow the Kronecker convention of kron(): the first-listed factor is the
// slow (most significant) index.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace probewit {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 16;

// Invalid arguments or dimension mismatches: caller misuse.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Violated numeric contracts (non-Hermitian input, non-physical state, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);

CMatrix adjoint(const CMatrix& a);
Complex trace(const CMatrix& a);

// Largest entry magnitude; zero for empty matrices.
double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol);
void ensure_finite(const CMatrix& a, const std::string& what);

// Kronecker product, first factor slow:  out((i*rb+k),(j*cb+l)) = a(i,j)*b(k,l).
// Result dimension above kMaxDim is a usage error.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Names the tensor factors of a composite index.  Factor order matches the
// kron() convention (first factor slow).
struct SpaceLayout {
  std::vector<int> factors;
  std::vector<std::string> labels;

  int dim() const;
};

SpaceLayout make_layout(std::vector<int> factors, std::vector<std::string> labels);

// Trace out every factor not listed in `keep`; kept factors preserve their
// relative order.  `keep` must be a non-empty subset of the layout labels.
CMatrix partial_trace(const CMatrix& a, const SpaceLayout& layout,
                      const std::vector<std::string>& keep);

struct EigResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns, matching `values`
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.  Sweeps run until the
// off-diagonal Frobenius norm drops below 1e-13 (relative to the matrix
// scale).  Input must be Hermitian to 1e-12 or a ContractError is thrown.
EigResult eig_hermitian(const CMatrix& a);

// exp(-i * angle * h) for Hermitian h, via the spectral decomposition.
CMatrix expm_generator(const CMatrix& h, double angle);

// Pauli matrices and friends, used throughout the realizations.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace probewit
