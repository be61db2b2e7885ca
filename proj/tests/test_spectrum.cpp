#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "errors.hpp"
#include "spectrum.hpp"

using namespace adsmax;

namespace {

// brute-force class counter: all 8^len strings, reduced + cyclically reduced,
// deduplicated under rotation and inversion
int brute_force_classes(int max_len) {
  const std::string letters = "abcdABCD";
  auto inv = [&](char c) -> char {
    const size_t i = letters.find(c);
    return letters[(i + 4) % 8];
  };
  std::set<std::string> classes;
  std::vector<std::string> stack = {""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : stack)
      for (char c : letters) next.push_back(w + c);
    stack = next;
    for (const auto& w : stack) {
      bool reduced = true;
      for (size_t i = 0; i + 1 < w.size(); ++i)
        if (inv(w[i]) == w[i + 1]) reduced = false;
      if (!reduced || inv(w.front()) == w.back()) continue;
      std::string best = w;
      std::string iw(w.rbegin(), w.rend());
      for (char& c : iw) c = inv(c);
      for (size_t k = 0; k < w.size(); ++k) {
        best = std::min(best, w.substr(k) + w.substr(0, k));
        best = std::min(best, iw.substr(k) + iw.substr(0, k));
      }
      classes.insert(best);
    }
  }
  return static_cast<int>(classes.size());
}

}  // namespace

TEST_CASE("class enumeration: length 1 gives the four generators") {
  const auto cls = enumerate_classes(1);
  REQUIRE(cls.size() == 4);
  CHECK(cls[0] == "a");
  CHECK(cls[3] == "d");
}

TEST_CASE("class enumeration matches the brute-force oracle up to length 3") {
  for (int len : {1, 2, 3}) {
    const auto cls = enumerate_classes(len);
    CHECK(static_cast<int>(cls.size()) == brute_force_classes(len));
  }
}

TEST_CASE("every enumerated word is cyclically reduced") {
  const std::string letters = "abcdABCD";
  auto inv = [&](char c) -> char { return letters[(letters.find(c) + 4) % 8]; };
  for (const auto& w : enumerate_classes(4)) {
    for (size_t i = 0; i + 1 < w.size(); ++i) CHECK(inv(w[i]) != w[i + 1]);
    CHECK(inv(w.front()) != w.back());
  }
}

TEST_CASE("translation length: diagonal matrix, conjugation invariance") {
  FuchsianRep rep = octagon_representation();
  rep.generators[0] << 2.0, 0.0, 0.0, 0.5;  // translation length 2 ln 2
  CHECK(translation_length(rep, "a") == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  CHECK(translation_length(rep, "a") == doctest::Approx(1.3862943611).epsilon(1e-9));

  // generic conjugation preserves lengths to rounding
  const FuchsianRep oct = octagon_representation();
  Mat2d g;
  g << 1.3, 0.4, 0.2, (1.0 + 0.4 * 0.2) / 1.3;  // det 1
  FuchsianRep conj = oct;
  for (auto& m : conj.generators) m = g * m * g.inverse();
  for (const std::string w : {"a", "ab", "abC"})
    CHECK(translation_length(conj, w) ==
          doctest::Approx(translation_length(oct, w)).epsilon(1e-10));
}

TEST_CASE("octagon generator length agrees with a matrix-free oracle") {
  // oracle: minimize d(z, a z) over the disk by coarse search plus refinement
  const Octagon& o = Octagon::regular();
  auto displacement = [&](cplx z) {
    return disk::distance(z, disk::apply(o.gens_disk[0], z));
  };
  double best = 1e9;
  cplx best_z;
  for (double x = -0.9; x <= 0.9; x += 0.02)
    for (double y = -0.9; y <= 0.9; y += 0.02) {
      const cplx z(x, y);
      if (std::abs(z) >= 0.95) continue;
      const double d = displacement(z);
      if (d < best) {
        best = d;
        best_z = z;
      }
    }
  double step = 0.02;
  while (step > 1e-9) {
    bool improved = false;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const cplx z = best_z + cplx(dx * step, dy * step);
        if (std::abs(z) >= 0.999) continue;
        const double d = displacement(z);
        if (d < best) {
          best = d;
          best_z = z;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  const double via_trace = translation_length(octagon_representation(), "a");
  CHECK(via_trace == doctest::Approx(best).epsilon(1e-6));
  CHECK(via_trace == doctest::Approx(2.2567679299).epsilon(1e-9));
}

TEST_CASE("non-hyperbolic elements are flagged") {
  FuchsianRep rep = octagon_representation();
  rep.generators[0] << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);  // elliptic
  CHECK_THROWS_AS(translation_length(rep, "a"), DomainError);
}

TEST_CASE("holder estimate: identical reps give alpha = 1 exactly") {
  const FuchsianRep rep = octagon_representation();
  const HolderReport r = holder_estimate(rep, rep, 3);
  CHECK(r.alpha_hat == 1.0);
  for (const auto& row : r.table) {
    CHECK(row.min_ratio == 1.0);
    CHECK(row.beta_star == 0.0);
  }
}

TEST_CASE("holder estimate: power-of-two diagonal conjugation is float-exact") {
  const FuchsianRep rep = octagon_representation();
  FuchsianRep conj = rep;
  Mat2d g;
  g << 2.0, 0.0, 0.0, 0.5;
  for (auto& m : conj.generators) m = g * m * g.inverse();
  const HolderReport r = holder_estimate(rep, conj, 3);
  CHECK(r.alpha_hat == 1.0);
}

TEST_CASE("holder estimate: swap symmetry and beta identity rows") {
  // an asymmetric but valid pair: conjugated by a generic matrix on one side
  const FuchsianRep rep_l = octagon_representation();
  FuchsianRep rep_r = rep_l;
  Mat2d g;
  g << 1.1, 0.3, 0.1, (1.0 + 0.3 * 0.1) / 1.1;
  for (auto& m : rep_r.generators) m = g * m * g.inverse();

  const HolderReport ab = holder_estimate(rep_l, rep_r, 3);
  const HolderReport ba = holder_estimate(rep_r, rep_l, 3);
  CHECK(ab.alpha_hat == doctest::Approx(ba.alpha_hat).epsilon(1e-12));
  for (size_t i = 0; i < ab.table.size(); ++i) {
    const auto& row = ab.table[i];
    const double lhs = (row.beta - row.beta_star) / (row.beta + row.beta_star);
    CHECK(lhs == doctest::Approx(row.min_ratio).epsilon(1e-12));
  }
  // alpha_hat history never increases with word length
  for (size_t i = 1; i < ab.monotone_history.size(); ++i)
    CHECK(ab.monotone_history[i] <= ab.monotone_history[i - 1]);
}

TEST_CASE("beta identity as a value-level property over random pairs") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> len(1e-3, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const double l = len(rng), r = len(rng);
    const double beta = 0.5 * (l + r), beta_star = 0.5 * std::abs(l - r);
    const double lhs = (beta - beta_star) / (beta + beta_star);
    const double rhs = std::min(l / r, r / l);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("representation JSON round trip and validation") {
  const FuchsianRep rep = octagon_representation();
  const FuchsianRep back = FuchsianRep::from_json_text(rep.to_json_text());
  for (int g = 0; g < 4; ++g)
    CHECK((back.generators[g] - rep.generators[g]).cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep.relation_residual() < 1e-10);
  CHECK(rep.max_det_defect() < 1e-12);

  FuchsianRep bad = rep;
  bad.generators[2] *= 1.01;  // det drifts
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(FuchsianRep::from_json_text("{\"generators\": [1,2,3]}"), ConfigError);
}

TEST_CASE("word length cap") {
  CHECK_THROWS_AS(enumerate_classes(kMaxWordLength + 1), ResourceError);
  CHECK_THROWS_AS(enumerate_classes(0), ConfigError);
}
