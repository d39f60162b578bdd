#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dsmb/eigenfunction.hpp"
#include "dsmb/farfield.hpp"
#include "dsmb/mesh.hpp"
#include "dsmb/source.hpp"

namespace dsmb {

struct BasisTerm
{
  int m;
  int n;
  Parity parity;
  friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

/// Truncated disc eigenbasis: m = 1..M, n = 0..N, sine terms for n >= 1 only,
/// (2N + 1) M terms. Ordering: all cosine terms (m-major, n = 0..N), then all
/// sine terms (m-major, n = 1..N).
class BasisIndex
{
public:
  BasisIndex(int M, int N);

  int M() const noexcept { return M_; }
  int N() const noexcept { return N_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<BasisTerm>& terms() const noexcept { return terms_; }
  const BasisTerm& operator[](std::size_t c) const { return terms_[c]; }
  /// ContractError if the term is not part of the basis.
  std::size_t index_of(int m, int n, Parity parity) const;

  friend bool operator==(const BasisIndex& a, const BasisIndex& b) { return a.M_ == b.M_ && a.N_ == b.N_; }

private:
  int M_;
  int N_;
  std::vector<BasisTerm> terms_;
};

std::vector<DiscEigenfunction> eigenfunctions(const BasisIndex& basis, const Disc& disc);

/// table[t * P + c] = Q_c(points[t]).
std::vector<double> basis_table(const BasisIndex& basis, const Disc& disc, std::span<const Point2> points);

struct CoefficientVector
{
  BasisIndex basis{5, 2};
  Disc disc;
  std::vector<double> values;

  static CoefficientVector zeros(const BasisIndex& basis, const Disc& disc);
  /// ContractError if values.size() != basis.size().
  void validate() const;
};

/// f_BE(x) = sum_c A_c Q_c(x); zero outside the disc.
double eval_f_be(const CoefficientVector& a, Point2 x);
/// f_BE at many points, via one basis table.
std::vector<double> eval_f_be(const CoefficientVector& a, std::span<const Point2> points);

/// A_c = sum_T f(y_T) Q_c(y_T) |T|.
CoefficientVector project(const SourceSpec& source, const BasisIndex& basis, const Disc& disc,
                          const TriangleMesh& mesh);

/// Dense matrix of the linear map A -> far field of f_BE, with rows ordered
/// j * I + i (wavenumber-major, matching FarFieldData).
class ForwardOperator
{
public:
  ForwardOperator(BasisIndex basis, Disc disc, Aperture aperture, std::vector<double> wavenumbers,
                  std::vector<cplx> matrix);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return basis_.size(); }
  const BasisIndex& basis() const noexcept { return basis_; }
  const Disc& disc() const noexcept { return disc_; }
  const Aperture& aperture() const noexcept { return aperture_; }
  const std::vector<double>& wavenumbers() const noexcept { return wavenumbers_; }
  /// Row-major rows() x cols().
  const std::vector<cplx>& matrix() const noexcept { return matrix_; }
  cplx operator()(std::size_t row, std::size_t col) const { return matrix_[row * cols() + col]; }

  /// out = F a. ContractError on size mismatch.
  void apply(std::span<const double> a, std::span<cplx> out) const;
  std::vector<cplx> apply(std::span<const double> a) const;

private:
  BasisIndex basis_;
  Disc disc_;
  Aperture aperture_;
  std::vector<double> wavenumbers_;
  std::size_t rows_;
  std::vector<cplx> matrix_;
};

ForwardOperator assemble_forward_operator(const BasisIndex& basis, const Disc& disc,
                                          const Aperture& aperture, const std::vector<double>& wavenumbers,
                                          const TriangleMesh& mesh, Exec exec = Exec::parallel);

/// "# coefficients v1 M=<M> N=<N> cx=<cx> cy=<cy> R=<R>" then "m n parity value".
void write_coefficients(std::ostream& out, const CoefficientVector& a);
CoefficientVector read_coefficients(std::istream& in);

} // namespace dsmb
