#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logres/jets.hpp"
#include "logres/liealg.hpp"

namespace logres {

// A mathematical condition failed on otherwise well-formed input.
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order-n form with (g^*)^{(x) n} slots on the n-fold product; stored undecomposed.
using GSection = TensorForm;

// Labels s_1..s_d = sigma(1..d); residues along Diag(s_{d-1},s_d), then Diag(s_{d-2}, cluster), ...,
// each cluster represented by its smallest label. Slots are kept.
TensorForm res_chain(const GSection& w, const std::vector<int>& sigma, int d);
// Same for an explicit label sequence.
TensorForm res_chain_labels(const GSection& w, const std::vector<int>& labels);

// The unique A with (cobracket_tree(pattern) on `slots`, identity elsewhere)(A) = r. `slots` lists the
// 1-based slot positions of the pattern letters 1..d; A gets one slot at min(slots).
// Throws InputError when the cobracket is not injective.
std::optional<TensorForm> factor_through_cobracket(const LieAlgebra& g, const TensorForm& r,
                                                   const BracketExpr& pattern, const std::vector<int>& slots);

struct BDReport {
  bool ok = true;
  int depth = 0;
  std::vector<int> chain;  // labels s_1..s_d of the first failing chain
  std::vector<int> slots;  // spectator/cluster key where the factorization fails
  std::string detail;
  std::size_t chains_checked = 0;
};
// Every chain of depth 2..n over every ordered label sequence with s_{d-1} < s_d.
BDReport bd_membership(const LieAlgebra& g, const GSection& w);

// (Psi^*_{n-1,n})^{-1} of the residue along Diag(n-1,n); throws MathError when that residue is not a cobracket.
GSection residue_map(const LieAlgebra& g, const GSection& w);

// No poles along any diagonal.
bool is_regular(const GSection& w);

struct ExactnessReport {
  int n = 0, bound = 0;
  std::size_t dim_total = 0;    // anti-invariant BD sections in the truncation
  std::size_t dim_kernel = 0;   // kernel of the residue map
  std::size_t dim_regular = 0;  // sections without diagonal poles
  std::size_t dim_image = 0;
  std::size_t sym_power_dim = 0;  // dim S^n of the regular one-form space
  bool kernel_is_regular = false;
  bool additive = false;
  bool image_in_bd = false;
  std::string note;
};
// Genus-zero sections e^J p(z) / (prod z_m^B prod_{i<j}(z_i - z_j)) without pole at infinity; n <= 3.
ExactnessReport kernel_and_exactness_report(const LieAlgebra& g, int n, int bound);

}  // namespace logres
