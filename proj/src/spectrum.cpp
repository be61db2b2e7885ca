#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace adsmax {

namespace {

// letter ids 0..7 = a,b,c,d,A,B,C,D; order for lexicographic comparison
constexpr char kLetters[9] = "abcdABCD";

int letter_id(char c) {
  const char* p = std::strchr(kLetters, c);
  if (!p || !c) throw ConfigError(std::string("invalid word letter '") + c + "'");
  return static_cast<int>(p - kLetters);
}

int inv(int l) { return (l + 4) % 8; }

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<int> rotate(const std::vector<int>& w, size_t k) {
  std::vector<int> r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = w[(i + k) % w.size()];
  return r;
}

std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = inv(w[w.size() - 1 - i]);
  return r;
}

bool is_canonical(const std::vector<int>& w) {
  const std::vector<int> iw = inverse_word(w);
  for (size_t k = 0; k < w.size(); ++k) {
    if (lex_less(rotate(w, k), w)) return false;
    if (lex_less(rotate(iw, k), w)) return false;
  }
  return true;
}

void enumerate_rec(std::vector<int>& w, int max_len, std::vector<std::string>& out) {
  if (!w.empty()) {
    // cyclically reduced and canonical -> emit
    if (w.size() == 1 || inv(w.front()) != w.back()) {
      if (is_canonical(w)) {
        std::string txt;
        for (int l : w) txt += kLetters[l];
        out.push_back(std::move(txt));
      }
    }
  }
  if (static_cast<int>(w.size()) == max_len) return;
  for (int l = 0; l < 8; ++l) {
    if (!w.empty() && inv(w.back()) == l) continue;  // free reduction
    w.push_back(l);
    enumerate_rec(w, max_len, out);
    w.pop_back();
  }
}

}  // namespace

double FuchsianRep::max_det_defect() const {
  double d = 0;
  for (const auto& g : generators) d = std::max(d, std::abs(g.determinant() - 1.0));
  return d;
}

double FuchsianRep::relation_residual() const {
  const Mat2d rel = generators[0] * generators[1] * generators[0].inverse() *
                    generators[1].inverse() * generators[2] * generators[3] *
                    generators[2].inverse() * generators[3].inverse();
  const Mat2d id = Mat2d::Identity();
  return std::min((rel - id).cwiseAbs().maxCoeff(), (rel + id).cwiseAbs().maxCoeff());
}

void FuchsianRep::validate() const {
  if (max_det_defect() > 1e-12)
    throw ConfigError("representation generators must have determinant 1 (defect " +
                      std::to_string(max_det_defect()) + ")");
  if (relation_residual() > 1e-8)
    throw ConfigError("representation violates the surface relation [a,b][c,d] (residual " +
                      std::to_string(relation_residual()) + ")");
}

FuchsianRep FuchsianRep::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("representation JSON parse error: ") + e.what());
  }
  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].size() != 4)
    throw ConfigError("representation JSON needs a \"generators\" array of 4 matrices");
  FuchsianRep rep;
  for (int g = 0; g < 4; ++g) {
    const auto& m = j["generators"][g];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
        !m[1].is_array() || m[1].size() != 2)
      throw ConfigError("representation generator " + std::to_string(g) +
                        " must be a 2x2 matrix");
    rep.generators[g] << m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(),
        m[1][1].get<double>();
  }
  return rep;
}

FuchsianRep FuchsianRep::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open representation file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string FuchsianRep::to_json_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"generators\": [";
  for (int g = 0; g < 4; ++g) {
    const auto& m = generators[g];
    os << (g ? ", " : "") << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", "
       << m(1, 1) << "]]";
  }
  os << "]}\n";
  return os.str();
}

std::vector<std::string> enumerate_classes(int max_len) {
  if (max_len < 1) throw ConfigError("enumerate_classes: max_len must be >= 1");
  if (max_len > kMaxWordLength)
    throw ResourceError("enumerate_classes: max_len " + std::to_string(max_len) +
                        " exceeds cap " + std::to_string(kMaxWordLength));
  std::vector<std::string> out;
  std::vector<int> w;
  enumerate_rec(w, max_len, out);
  std::stable_sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return letter_id(a[i]) < letter_id(b[i]);
    return false;
  });
  return out;
}

double translation_length(const FuchsianRep& rep, const std::string& word) {
  if (word.empty()) throw ConfigError("translation_length: empty word");
  Mat2d m = Mat2d::Identity();
  for (char c : word) {
    const int l = letter_id(c);
    m = m * (l < 4 ? rep.generators[l] : Mat2d(rep.generators[l - 4].inverse()));
  }
  const double det = m.determinant();
  if (!(det > 0)) throw DomainError("translation_length: evaluated matrix is degenerate");
  m /= std::sqrt(det);
  const double tr = std::abs(m.trace());
  if (tr <= 2.0 + 1e-12)
    throw DomainError("translation_length: non-hyperbolic element '" + word + "' (|tr| = " +
                      std::to_string(tr) + "); representation may not be discrete/faithful");
  return 2.0 * std::acosh(tr / 2.0);
}

HolderReport holder_estimate(const FuchsianRep& rep_l, const FuchsianRep& rep_r, int max_len) {
  rep_l.validate();
  rep_r.validate();
  const auto classes = enumerate_classes(max_len);

  HolderReport rep;
  rep.max_word_length = max_len;
  rep.table.resize(classes.size());
  std::vector<std::string> errors(classes.size());
  util::parallel_for(static_cast<int64_t>(classes.size()), [&](int64_t i) {
    HolderRow row;
    row.word = classes[i];
    try {
      row.ell_l = translation_length(rep_l, row.word);
      row.ell_r = translation_length(rep_r, row.word);
      row.min_ratio = std::min(row.ell_l / row.ell_r, row.ell_r / row.ell_l);
      row.beta = 0.5 * (row.ell_l + row.ell_r);
      row.beta_star = 0.5 * std::abs(row.ell_l - row.ell_r);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
    rep.table[i] = std::move(row);
  });
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);

  rep.monotone_history.assign(max_len, 1.0);
  rep.alpha_hat = 1.0;
  for (const auto& row : rep.table) {
    const int len = static_cast<int>(row.word.size());
    if (row.min_ratio < rep.alpha_hat) {
      rep.alpha_hat = row.min_ratio;
      rep.witness_word = row.word;
    }
    for (int k = len; k <= max_len; ++k)
      rep.monotone_history[k - 1] = std::min(rep.monotone_history[k - 1], row.min_ratio);
  }
  if (rep.witness_word.empty() && !rep.table.empty()) rep.witness_word = rep.table.front().word;
  return rep;
}

FuchsianRep octagon_representation() {
  FuchsianRep rep;
  rep.generators = Octagon::regular().gens_real;
  return rep;
}

}  // namespace adsmax
