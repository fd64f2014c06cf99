#include "vbg/cochain.hpp"

#include "vbg/subspace.hpp"

namespace vbg {

Matrix CochainComplex::d(int p) const {
  if (p >= first_degree && p < last_degree()) {
    return differentials[p - first_degree];
  }
  return Matrix::zero(dim(p + 1), dim(p));
}

std::vector<int> CochainComplex::reliable_degrees() const {
  std::vector<int> out;
  const int top = truncated ? last_degree() - 1 : last_degree();
  for (int p = first_degree; p <= top; ++p) out.push_back(p);
  return out;
}

void validate_complex(const CochainComplex& c) {
  if (c.dims.empty()) return;
  if (c.differentials.size() + 1 != c.dims.size()) {
    throw ComplexError("complex has " + std::to_string(c.dims.size()) +
                       " degrees but " + std::to_string(c.differentials.size()) +
                       " differentials");
  }
  for (int p = c.first_degree; p < c.last_degree(); ++p) {
    const auto& dp = c.differentials[p - c.first_degree];
    if (dp.rows() != c.dim(p + 1) || dp.cols() != c.dim(p)) {
      throw ComplexError("differential shape mismatch in degree " +
                         std::to_string(p));
    }
  }
  for (int p = c.first_degree; p + 1 < c.last_degree(); ++p) {
    if (!(c.d(p + 1) * c.d(p)).is_zero()) {
      throw ComplexError("d∘d != 0 starting in degree " + std::to_string(p));
    }
  }
}

namespace {

struct DegreeData {
  Subspace cycles;
  Subspace boundaries;
  Matrix reps;
};

DegreeData degree_data(const CochainComplex& c, int p) {
  Subspace z = kernel_space(c.d(p));
  Subspace b = image_space(c.d(p - 1));
  Matrix reps = quotient_reps(b, z);
  return {std::move(z), std::move(b), std::move(reps)};
}

}  // namespace

std::vector<CohomologyDegree> complex_cohomology(const CochainComplex& c) {
  validate_complex(c);
  std::vector<CohomologyDegree> out;
  for (int p : c.reliable_degrees()) {
    auto data = degree_data(c, p);
    out.push_back({p, data.reps.cols(), std::move(data.reps)});
  }
  return out;
}

Matrix induced_on_cohomology(const CochainComplex& c, const CochainComplex& c2,
                             const std::vector<Matrix>& f, int p) {
  const auto src = degree_data(c, p);
  const auto dst = degree_data(c2, p);
  const Matrix& fp = f[p - c.first_degree];
  const Matrix image = fp * src.reps;
  const Matrix frame = hstack(dst.boundaries.basis(), dst.reps);
  const Matrix coords = solve_or_throw(frame, image, "induced map leaves cycles");
  return coords.row_range(dst.boundaries.dim(), frame.cols());
}

QuasiIsoCertificate chain_map_is_quasi_iso(const CochainComplex& c,
                                           const CochainComplex& c2,
                                           const std::vector<Matrix>& f) {
  validate_complex(c);
  validate_complex(c2);
  if (c.first_degree != c2.first_degree || c.dims.size() != c2.dims.size() ||
      f.size() != c.dims.size()) {
    throw ComplexError("chain map degree ranges do not match");
  }
  for (int p = c.first_degree; p <= c.last_degree(); ++p) {
    const auto& fp = f[p - c.first_degree];
    if (fp.rows() != c2.dim(p) || fp.cols() != c.dim(p)) {
      throw ComplexError("chain map shape mismatch in degree " + std::to_string(p));
    }
    if (p < c.last_degree() &&
        !(c2.d(p) * fp == f[p + 1 - c.first_degree] * c.d(p))) {
      throw ComplexError("not a chain map in degree " + std::to_string(p));
    }
  }
  QuasiIsoCertificate cert;
  cert.is_quasi_iso = true;
  const bool trunc = c.truncated || c2.truncated;
  const int top = trunc ? c.last_degree() - 1 : c.last_degree();
  for (int p = c.first_degree; p <= top; ++p) {
    const Matrix ind = induced_on_cohomology(c, c2, f, p);
    const std::size_t r = rank(ind);
    cert.degrees.push_back({p, ind.cols(), ind.rows(), r});
    if (ind.rows() != ind.cols() || r != ind.rows()) cert.is_quasi_iso = false;
  }
  return cert;
}

}  // namespace vbg
