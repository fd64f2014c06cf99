#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vbg/matrix.hpp"

namespace vbg {

/// Finite cochain complex on the degrees first_degree .. first_degree+n-1.
///
/// `differentials[k]` maps degree first_degree+k to first_degree+k+1. When
/// `truncated` is set the top degree is a truncation of a longer complex and
/// its outgoing differential is unknown, so no cohomology is reported there.
/// Otherwise the complex is zero outside the stored range.
struct CochainComplex {
  int first_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;
  bool truncated = false;

  int last_degree() const { return first_degree + static_cast<int>(dims.size()) - 1; }
  bool has_degree(int p) const { return p >= first_degree && p <= last_degree(); }
  std::size_t dim(int p) const { return has_degree(p) ? dims[p - first_degree] : 0; }
  /// Differential out of degree p (a zero matrix outside the stored range).
  Matrix d(int p) const;
  /// Degrees whose cohomology is determined by the stored data.
  std::vector<int> reliable_degrees() const;
};

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ComplexError if shapes are inconsistent or d∘d ≠ 0.
void validate_complex(const CochainComplex& c);

struct CohomologyDegree {
  int degree = 0;
  std::size_t dim = 0;
  /// Kernel vectors completing the image of the incoming differential.
  Matrix representatives;
};

std::vector<CohomologyDegree> complex_cohomology(const CochainComplex& c);

struct QuasiIsoCertificate {
  bool is_quasi_iso = false;
  struct Entry {
    int degree;
    std::size_t dim_source, dim_target, induced_rank;
  };
  std::vector<Entry> degrees;
};

/// Per-degree matrices f[k] : c^{p} -> c'^{p} for p = c.first_degree + k.
/// Both complexes must share first_degree and length. Throws ComplexError
/// if f does not commute with the differentials.
QuasiIsoCertificate chain_map_is_quasi_iso(const CochainComplex& c,
                                           const CochainComplex& c2,
                                           const std::vector<Matrix>& f);

/// Induced map on cohomology in degree p, in the representative bases.
Matrix induced_on_cohomology(const CochainComplex& c, const CochainComplex& c2,
                             const std::vector<Matrix>& f, int p);

}  // namespace vbg
