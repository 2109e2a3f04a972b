#pragma once

#include <vector>

#include "syzlab/gf_poly.hpp"
#include "syzlab/rng.hpp"

namespace syzlab {

/// Square matrix with entries in GF(p)[t], read as elements of the discrete
/// valuation ring GF(p)[[t]].
class PolyMatrix {
 public:
  PolyMatrix(std::size_t n, PrimeField field, long degree_cap);

  std::size_t size() const noexcept { return n_; }
  const PrimeField& field() const noexcept { return field_; }
  long degree_cap() const noexcept { return degree_cap_; }

  const GFPoly& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  /// Throws Error if the entry's degree exceeds the cap.
  void set(std::size_t i, std::size_t j, GFPoly value);

  /// Entrywise value at t = 0.
  std::vector<Residue> constant_terms() const;

 private:
  std::size_t n_;
  PrimeField field_;
  long degree_cap_;
  std::vector<GFPoly> entries_;
};

struct DegeneracyCheck {
  std::size_t corank0 = 0;  // corank of M(0)
  std::size_t detval = 0;   // t-adic valuation of det M
  bool ok = false;          // detval >= corank0
};

/// Compares the corank of M at t = 0 with the valuation of det M.
///
/// The valuation is found by elimination in GF(p)[t]/(t^N) with
/// N = 1 + sum of row degrees, which exceeds deg det M: at each step the
/// pivot is an entry of minimal valuation in the active block, so every
/// quotient entry/pivot lies in the valuation ring and all row operations
/// stay exact modulo t^N. The valuation of det is the sum of the pivot
/// valuations. Throws SingularMatrix when det M = 0.
DegeneracyCheck dvr_degeneracy_check(const PolyMatrix& m);

/// A random instance U * diag(t^exponents[i]) * V with U, V invertible
/// constant matrices.
PolyMatrix random_smith_instance(const std::vector<unsigned>& exponents, PrimeField field,
                                 Rng& rng);

}  // namespace syzlab
