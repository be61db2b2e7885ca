#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace adsmax {

inline constexpr int kMaxWordLength = 8;

// Four SL(2,R) generators up to global sign. Words use letters a..d for the
// generators and A..D for their inverses.
struct FuchsianRep {
  std::array<Mat2d, 4> generators;

  double max_det_defect() const;
  // max-entry defect of [a,b][c,d] against +-identity
  double relation_residual() const;
  void validate() const;  // det and relation thresholds

  static FuchsianRep from_json_text(const std::string& text);
  static FuchsianRep from_json_file(const std::string& path);
  std::string to_json_text() const;
};

// Cyclically reduced words of length 1..max_len, one representative per class
// under cyclic rotation and inversion (both preserve translation length);
// deterministic order: by length, then lexicographic in a<b<c<d<A<B<C<D.
std::vector<std::string> enumerate_classes(int max_len);

// l = 2 arccosh(|tr|/2) of the evaluated word; throws DomainError on
// |tr| <= 2 + 1e-12 (non-hyperbolic element flags a bad representation)
double translation_length(const FuchsianRep& rep, const std::string& word);

struct HolderRow {
  std::string word;
  double ell_l = 0, ell_r = 0;
  double min_ratio = 0;  // min(ell_l/ell_r, ell_r/ell_l)
  double beta = 0;       // (ell_l + ell_r)/2
  double beta_star = 0;  // |ell_l - ell_r|/2
};

struct HolderReport {
  double alpha_hat = 1.0;
  std::string witness_word;
  int max_word_length = 0;
  std::vector<HolderRow> table;
  std::vector<double> monotone_history;  // alpha_hat restricted to length <= k, k = 1..max
};

HolderReport holder_estimate(const FuchsianRep& rep_l, const FuchsianRep& rep_r, int max_len);

// the shipped regular-octagon representation
FuchsianRep octagon_representation();

}  // namespace adsmax
