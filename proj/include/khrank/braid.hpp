#pragma once

// Braid words in B_l, the permutations they induce, and the reduced Burau
// representation B_l -> GL(l-1, Z[t, t^-1]). The variable t is stored in the
// y slot of Laurent2 so that x*I - rho(beta) needs no renaming.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "khrank/error.hpp"
#include "khrank/laurent.hpp"

namespace khrank {

/// sigma_index^sign, 1 <= index <= strands-1.
struct BraidLetter {
  int index = 1;
  int sign = 1;
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

class BraidWord {
 public:
  explicit BraidWord(int strands, std::vector<BraidLetter> letters = {}) : strands_(strands), letters_(std::move(letters)) {
    if (strands < 1) throw Error("a braid needs at least one strand");
    for (const auto& l : letters_) {
      if (l.index < 1 || l.index > strands - 1)
        throw Error("generator index " + std::to_string(l.index) + " outside [1, " + std::to_string(strands - 1) + "]");
      if (l.sign != 1 && l.sign != -1) throw Error("generator sign must be +1 or -1");
    }
  }

  /// Signed-integer form: k is sigma_k, -k is sigma_k^-1.
  static BraidWord from_signed(int strands, const std::vector<int>& word) {
    std::vector<BraidLetter> letters;
    letters.reserve(word.size());
    for (int g : word) {
      if (g == 0) throw ParseError("braid generator 0 is not allowed");
      letters.push_back({g < 0 ? -g : g, g < 0 ? -1 : 1});
    }
    return BraidWord(strands, std::move(letters));
  }

  int strands() const { return strands_; }
  const std::vector<BraidLetter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }

  BraidWord operator*(const BraidWord& o) const {
    if (o.strands_ != strands_) throw Error("cannot multiply braids on different strand counts");
    std::vector<BraidLetter> l = letters_;
    l.insert(l.end(), o.letters_.begin(), o.letters_.end());
    return BraidWord(strands_, std::move(l));
  }

  BraidWord inverse() const {
    std::vector<BraidLetter> l(letters_.rbegin(), letters_.rend());
    for (auto& g : l) g.sign = -g.sign;
    return BraidWord(strands_, std::move(l));
  }

  std::vector<int> signed_letters() const {
    std::vector<int> out;
    for (const auto& l : letters_) out.push_back(l.sign * l.index);
    return out;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<BraidLetter> letters_;
};

/// Text form `l:w`, w a whitespace-separated list of nonzero integers.
inline BraidWord parse_braid(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("braid '" + std::string(text) + "': expected 'strands:word'");
  auto to_int = [&](std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("braid '" + std::string(text) + "': bad integer '" + std::string(tok) + "'");
    return v;
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  int strands = to_int(trim(text.substr(0, colon)));
  std::vector<int> word;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    rest = trim(rest);
    if (rest.empty()) break;
    std::size_t end = 0;
    while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end])) && rest[end] != ',') ++end;
    word.push_back(to_int(rest.substr(0, end)));
    rest.remove_prefix(end);
    if (!rest.empty() && rest.front() == ',') rest.remove_prefix(1);
  }
  try {
    return BraidWord::from_signed(strands, word);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("braid '" + std::string(text) + "': " + e.what());
  }
}

inline std::string to_string(const BraidWord& w) {
  std::string out = std::to_string(w.strands()) + ":";
  bool first = true;
  for (int g : w.signed_letters()) {
    if (!first) out += ' ';
    out += std::to_string(g);
    first = false;
  }
  return out;
}

/// perm[p] is the final position (0-based) of the strand that starts at
/// position p, applying the transpositions (i, i+1) in word order.
inline std::vector<int> permutation(const BraidWord& w) {
  std::vector<int> strand_at(static_cast<std::size_t>(w.strands()));
  std::iota(strand_at.begin(), strand_at.end(), 0);
  for (const auto& l : w.letters()) std::swap(strand_at[l.index - 1], strand_at[l.index]);
  std::vector<int> perm(strand_at.size());
  for (std::size_t pos = 0; pos < strand_at.size(); ++pos) perm[strand_at[pos]] = static_cast<int>(pos);
  return perm;
}

inline int cycle_count(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t p = s; !seen[p]; p = static_cast<std::size_t>(perm[p])) seen[p] = true;
  }
  return cycles;
}

inline int closure_component_count(const BraidWord& w) { return cycle_count(permutation(w)); }

namespace detail {

/// Row `i` (1-based) of the image of sigma_i is (t, -t, 1) on columns
/// i-1, i, i+1; the inverse has (1, -t^-1, t^-1). Columns outside 1..l-1 are dropped.
inline PolyMatrix burau_generator_image(int index, int strands, int sign) {
  const int n = strands - 1;
  PolyMatrix m = PolyMatrix::identity(static_cast<std::size_t>(n));
  const std::size_t row = static_cast<std::size_t>(index - 1);
  const Laurent2 t = Laurent2::variable(Var::y);
  const Laurent2 t_inv = Laurent2::monomial(1, 0, -1);
  const Laurent2 left = sign > 0 ? t : Laurent2(1);
  const Laurent2 center = sign > 0 ? -t : -t_inv;
  const Laurent2 right = sign > 0 ? Laurent2(1) : t_inv;
  if (index - 2 >= 0) m(row, row - 1) = left;
  m(row, row) = center;
  if (index < n) m(row, row + 1) = right;
  return m;
}

inline const PolyMatrix& burau_generator_cached(int index, int strands, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, PolyMatrix> cache;
  std::lock_guard lock(mu);
  auto key = std::tuple(index, strands, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PolyMatrix image = burau_generator_image(index, strands, sign);
  if (sign < 0) {
    const PolyMatrix id = PolyMatrix::identity(static_cast<std::size_t>(strands - 1));
    if (burau_generator_image(index, strands, 1) * image != id || image * burau_generator_image(index, strands, 1) != id)
      throw Error("closed-form inverse Burau generator failed to invert");
  }
  return cache.emplace(key, std::move(image)).first->second;
}

}  // namespace detail

/// Image of a single generator sigma_index^sign.
inline PolyMatrix burau_generator(int index, int strands, int sign = 1) {
  if (strands < 2) throw Error("reduced Burau undefined for fewer than 2 strands");
  if (index < 1 || index > strands - 1) throw Error("generator index out of range");
  return detail::burau_generator_cached(index, strands, sign);
}

/// rho(w) = rho(w_1) rho(w_2) ... rho(w_k).
inline PolyMatrix burau(const BraidWord& w) {
  if (w.strands() < 2) throw Error("reduced Burau undefined for fewer than 2 strands");
  PolyMatrix m = PolyMatrix::identity(static_cast<std::size_t>(w.strands() - 1));
  for (const auto& l : w.letters()) m = m * detail::burau_generator_cached(l.index, w.strands(), l.sign);
  return m;
}

}  // namespace khrank
