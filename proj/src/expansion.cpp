#include "dsmb/expansion.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dsmb/bessel.hpp"
#include "dsmb/errors.hpp"

namespace dsmb {

BasisIndex::BasisIndex(int M, int N) : M_(M), N_(N)
{
  if (M < 1 || N < 0 || M > 32 || N > 32)
    throw ConfigError("basis size out of range (1 <= M <= 32, 0 <= N <= 32)");
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n <= N; ++n)
      terms_.push_back({m, n, Parity::cosine});
  for (int m = 1; m <= M; ++m)
    for (int n = 1; n <= N; ++n)
      terms_.push_back({m, n, Parity::sine});
}

std::size_t BasisIndex::index_of(int m, int n, Parity parity) const
{
  for (std::size_t c = 0; c < terms_.size(); ++c)
    if (terms_[c] == BasisTerm{m, n, parity})
      return c;
  throw ContractError("basis term not present");
}

std::vector<DiscEigenfunction> eigenfunctions(const BasisIndex& basis, const Disc& disc)
{
  std::vector<DiscEigenfunction> out;
  out.reserve(basis.size());
  for (const auto& t : basis.terms())
    out.emplace_back(t.m, t.n, t.parity, disc);
  return out;
}

std::vector<double> basis_table(const BasisIndex& basis, const Disc& disc, std::span<const Point2> points)
{
  const auto funcs = eigenfunctions(basis, disc);
  const std::size_t P = basis.size();
  std::vector<double> table(points.size() * P, 0.0);
  std::vector<double> radial(static_cast<std::size_t>(basis.M()) * (basis.N() + 1));
  for (std::size_t t = 0; t < points.size(); ++t) {
    const Point2 local = points[t] - disc.center;
    const double r = local.norm();
    if (r > disc.radius)
      continue;
    const double theta = std::atan2(local.y, local.x);
    // J_n(q_mn r / R) is shared by the cosine and sine partners.
    for (int m = 1; m <= basis.M(); ++m)
      for (int n = 0; n <= basis.N(); ++n)
        radial[(m - 1) * (basis.N() + 1) + n] = bessel_j(n, bessel_zero(m, n) * r / disc.radius);
    for (std::size_t c = 0; c < P; ++c) {
      const auto& term = basis[c];
      const double rad = radial[(term.m - 1) * (basis.N() + 1) + term.n];
      const double ang = term.n == 0 ? 1.0
                         : term.parity == Parity::cosine ? std::cos(term.n * theta)
                                                         : std::sin(term.n * theta);
      table[t * P + c] = funcs[c].normalization() * rad * ang;
    }
  }
  return table;
}

CoefficientVector CoefficientVector::zeros(const BasisIndex& basis, const Disc& disc)
{
  return {basis, disc, std::vector<double>(basis.size(), 0.0)};
}

void CoefficientVector::validate() const
{
  if (values.size() != basis.size())
    throw ContractError("coefficient vector length does not match its basis");
}

double eval_f_be(const CoefficientVector& a, Point2 x)
{
  a.validate();
  const auto row = basis_table(a.basis, a.disc, std::span<const Point2>(&x, 1));
  double sum = 0.0;
  for (std::size_t c = 0; c < row.size(); ++c)
    sum += a.values[c] * row[c];
  return sum;
}

std::vector<double> eval_f_be(const CoefficientVector& a, std::span<const Point2> points)
{
  a.validate();
  const std::size_t P = a.basis.size();
  const auto table = basis_table(a.basis, a.disc, points);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t t = 0; t < points.size(); ++t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < P; ++c)
      sum += a.values[c] * table[t * P + c];
    out[t] = sum;
  }
  return out;
}

CoefficientVector project(const SourceSpec& source, const BasisIndex& basis, const Disc& disc,
                          const TriangleMesh& mesh)
{
  if (mesh.empty())
    throw ContractError("project: empty mesh");
  const std::size_t P = basis.size();
  const auto table = basis_table(basis, disc, mesh.centroids());
  auto coeffs = CoefficientVector::zeros(basis, disc);
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    const double fw = source(mesh.centroids()[t]) * mesh.areas()[t];
    if (fw == 0.0)
      continue;
    for (std::size_t c = 0; c < P; ++c)
      coeffs.values[c] += fw * table[t * P + c];
  }
  return coeffs;
}

ForwardOperator::ForwardOperator(BasisIndex basis, Disc disc, Aperture aperture, std::vector<double> wavenumbers,
                                 std::vector<cplx> matrix)
    : basis_(std::move(basis)), disc_(disc), aperture_(std::move(aperture)),
      wavenumbers_(std::move(wavenumbers)), rows_(aperture_.size() * wavenumbers_.size()),
      matrix_(std::move(matrix))
{
  if (matrix_.size() != rows_ * basis_.size())
    throw ContractError("forward operator matrix has the wrong shape");
}

void ForwardOperator::apply(std::span<const double> a, std::span<cplx> out) const
{
  const std::size_t P = cols();
  if (a.size() != P || out.size() != rows_)
    throw ContractError("forward operator applied to a vector of the wrong length");
  for (std::size_t r = 0; r < rows_; ++r) {
    const cplx* row = matrix_.data() + r * P;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < P; ++c) {
      re += row[c].real() * a[c];
      im += row[c].imag() * a[c];
    }
    out[r] = {re, im};
  }
}

std::vector<cplx> ForwardOperator::apply(std::span<const double> a) const
{
  std::vector<cplx> out(rows_);
  apply(a, out);
  return out;
}

ForwardOperator assemble_forward_operator(const BasisIndex& basis, const Disc& disc,
                                          const Aperture& aperture, const std::vector<double>& wavenumbers,
                                          const TriangleMesh& mesh, Exec exec)
{
  if (mesh.empty())
    throw ContractError("assemble_forward_operator: empty mesh");
  aperture.validate();
  for (double k : wavenumbers)
    if (!(k > 0.0))
      throw DomainError("forward operator: wavenumber must be positive");
  const auto table = basis_table(basis, disc, mesh.centroids());
  std::vector<cplx> matrix(aperture.size() * wavenumbers.size() * basis.size());
  operator_kernel(mesh.centroids(), mesh.areas(), table, basis.size(), aperture.angles, wavenumbers, matrix,
                  exec);
  return ForwardOperator(basis, disc, aperture, wavenumbers, std::move(matrix));
}

void write_coefficients(std::ostream& out, const CoefficientVector& a)
{
  a.validate();
  out.precision(17);
  out << "# coefficients v1 M=" << a.basis.M() << " N=" << a.basis.N() << " cx=" << a.disc.center.x
      << " cy=" << a.disc.center.y << " R=" << a.disc.radius << '\n';
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    const auto& t = a.basis[c];
    out << t.m << ' ' << t.n << ' ' << to_string(t.parity) << ' ' << a.values[c] << '\n';
  }
  if (!out)
    throw IoError("failed writing coefficients");
}

CoefficientVector read_coefficients(std::istream& in)
{
  std::string header;
  if (!std::getline(in, header))
    throw IoError("coefficient file is empty");
  int M = 0, N = 0;
  double cx = 0, cy = 0, R = 0;
  if (std::sscanf(header.c_str(), "# coefficients v1 M=%d N=%d cx=%lf cy=%lf R=%lf", &M, &N, &cx, &cy, &R) != 5)
    throw IoError("bad coefficient header: " + header);
  if (!(R > 0.0))
    throw IoError("coefficient file: disc radius must be positive");
  auto a = CoefficientVector::zeros(BasisIndex(M, N), Disc{{cx, cy}, R});
  std::vector<bool> seen(a.values.size(), false);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    int m, n;
    std::string parity;
    double v;
    if (!(ls >> m >> n >> parity >> v) || (parity != "cos" && parity != "sin"))
      throw IoError("bad coefficient line: " + line);
    const auto c = a.basis.index_of(m, n, parity == "cos" ? Parity::cosine : Parity::sine);
    a.values[c] = v;
    seen[c] = true;
  }
  for (bool s : seen)
    if (!s)
      throw ContractError("coefficient file does not cover the basis");
  return a;
}

} // namespace dsmb
