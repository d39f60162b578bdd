#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsmb/kernels.hpp"
#include "dsmb/source.hpp"

namespace dsmb {

/// Observation directions, angles strictly increasing in [0, 2 pi).
struct Aperture
{
  std::vector<double> angles;
  std::string name;

  /// Throws DomainError if the angle list is empty, unsorted or out of range.
  void validate() const;

  std::size_t size() const noexcept { return angles.size(); }

  /// G1 (full, 52 angles), G2 (half, 26) or G3 (quarter, 13), step pi/26.
  static Aperture builtin(int index);
  /// "G1".."G3" (also "1".."3"), or a comma-separated list of angles.
  static Aperture parse(const std::string& text);
};

/// a, a + step, ..., up to b inclusive (with a 1e-9 slack).
std::vector<double> wavenumber_range(double first, double step, double last);

enum class NoiseTag { clean, perturbed };
enum class NoiseMode { deterministic, random_uniform };

const char* to_string(NoiseTag tag);
const char* to_string(NoiseMode mode);
NoiseMode parse_noise_mode(const std::string& text);

/// Far-field samples u(xhat_i, k_j), stored wavenumber-major: index j * I + i.
class FarFieldData
{
public:
  FarFieldData() = default;
  /// Throws ContractError on shape mismatch or non-finite entries.
  FarFieldData(Aperture aperture, std::vector<double> wavenumbers, std::vector<cplx> values,
               NoiseTag tag = NoiseTag::clean);

  const Aperture& aperture() const noexcept { return aperture_; }
  const std::vector<double>& wavenumbers() const noexcept { return wavenumbers_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  NoiseTag noise_tag() const noexcept { return tag_; }

  std::size_t directions() const noexcept { return aperture_.size(); }
  std::size_t frequencies() const noexcept { return wavenumbers_.size(); }
  const cplx& at(std::size_t i, std::size_t j) const { return values_[j * directions() + i]; }

  /// Sub-dataset holding the listed wavenumbers (each must be present).
  FarFieldData select_wavenumbers(const std::vector<double>& ks) const;

private:
  Aperture aperture_;
  std::vector<double> wavenumbers_;
  std::vector<cplx> values_;
  NoiseTag tag_ = NoiseTag::clean;
};

/// Midpoint far field sum_T exp(-i k xhat . y_T) f(y_T) |T|. DomainError if k <= 0.
cplx far_field(const WeightedPoints& source, double k, double theta);
cplx far_field(const SourceSpec& source, const TriangleMesh& mesh, double k, double theta);

FarFieldData generate_dataset(const WeightedPoints& source, const Aperture& aperture,
                              const std::vector<double>& wavenumbers, Exec exec = Exec::parallel);
FarFieldData generate_dataset(const SourceSpec& source, const TriangleMesh& mesh,
                              const Aperture& aperture, const std::vector<double>& wavenumbers,
                              Exec exec = Exec::parallel);

/// Adds c_j = level (max_i Re u_ij + i max_i Im u_ij) to every direction at
/// wavenumber j. random_uniform scales c_j by an independent U(-1, 1) draw per
/// entry. Perturbing perturbed data throws StateError.
FarFieldData perturb(const FarFieldData& data, double level = 0.03,
                     NoiseMode mode = NoiseMode::deterministic, std::uint64_t seed = 0);

/// "# farfield v1 I=<I> J=<J> noise=<tag>" then "k theta re im" lines sorted by
/// k, then theta.
void write_farfield(std::ostream& out, const FarFieldData& data);
FarFieldData read_farfield(std::istream& in);

} // namespace dsmb
