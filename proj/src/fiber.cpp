#include "trusskit/fiber.hpp"

#include <algorithm>
#include <set>

namespace trusskit {

Fiber Fiber::parse(const std::string& word) {
  check(!word.empty(), "ValidationError", "fiber word is empty");
  for (size_t i = 0; i < word.size(); ++i) {
    check(word[i] == 'S' || word[i] == 'R', "ValidationError",
          "fiber word must be over {S,R}: '" + word + "'");
    check(i == 0 || word[i] != word[i - 1], "ValidationError",
          "fiber word must alternate: '" + word + "'");
  }
  Fiber f;
  f.word_ = word;
  return f;
}

std::vector<int> Fiber::down_set(int x) const {
  std::vector<int> out;
  if (singular(x)) {
    if (x > 0) out.push_back(x - 1);
    out.push_back(x);
    if (x + 1 < size()) out.push_back(x + 1);
  } else {
    out.push_back(x);
  }
  return out;
}

std::vector<int> Fiber::up_set(int x) const {
  std::vector<int> out;
  if (!singular(x)) {
    if (x > 0) out.push_back(x - 1);  // adjacent entries alternate, so singular
    out.push_back(x);
    if (x + 1 < size()) out.push_back(x + 1);
    std::sort(out.begin(), out.end());
  } else {
    out.push_back(x);
  }
  return out;
}

Fiber Fiber::dual() const {
  std::string w = word_;
  for (char& c : w) c = (c == 'S') ? 'R' : 'S';
  return parse(w);
}

std::vector<int> Fiber::singulars() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (singular(i)) out.push_back(i);
  return out;
}

std::vector<int> Fiber::regulars() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (!singular(i)) out.push_back(i);
  return out;
}

std::vector<std::pair<int, int>> Bordism::close(const Fiber& src, const Fiber& tgt,
                                                std::vector<std::pair<int, int>> pairs) {
  std::set<std::pair<int, int>> result(pairs.begin(), pairs.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> add;
    for (auto [t, s] : result) {
      for (int t2 : src.down_set(t))
        for (int s2 : tgt.up_set(s))
          if (!result.count({t2, s2})) add.emplace_back(t2, s2);
    }
    if (!add.empty()) {
      changed = true;
      result.insert(add.begin(), add.end());
    }
  }
  return {result.begin(), result.end()};
}

std::string Bordism::validate(const Fiber& src, const Fiber& tgt,
                              const std::vector<std::pair<int, int>>& pairs) {
  for (auto [t, s] : pairs) {
    if (t < 0 || t >= src.size() || s < 0 || s >= tgt.size()) return "pair index out of range";
  }
  // (A) function on singulars
  for (int t : src.singulars()) {
    int count = 0;
    for (auto [a, b] : pairs)
      if (a == t && tgt.singular(b)) ++count;
    if (count != 1) return "not functional on singulars";
  }
  // (A) cofunction on regulars
  for (int s : tgt.regulars()) {
    int count = 0;
    for (auto [a, b] : pairs)
      if (b == s && !src.singular(a)) ++count;
    if (count != 1) return "not cofunctional on regulars";
  }
  // (B) non-crossing over ordered pairs of distinct relation pairs
  for (auto [t, s] : pairs)
    for (auto [t2, s2] : pairs) {
      if (t == t2 && s == s2) continue;
      if (t < t2 && s2 < s) return "crossing pairs";
    }
  return "";
}

Bordism Bordism::make(const Fiber& src, const Fiber& tgt,
                      std::vector<std::pair<int, int>> generating) {
  auto b = try_make(src, tgt, std::move(generating));
  check(b.has_value(), "ValidationError", "invalid bordism");
  return *b;
}

std::optional<Bordism> Bordism::try_make(const Fiber& src, const Fiber& tgt,
                                         std::vector<std::pair<int, int>> generating) {
  for (auto [t, s] : generating)
    if (t < 0 || t >= src.size() || s < 0 || s >= tgt.size()) return std::nullopt;
  Bordism b;
  b.src_size_ = src.size();
  b.tgt_size_ = tgt.size();
  b.pairs_ = close(src, tgt, std::move(generating));
  if (!validate(src, tgt, b.pairs_).empty()) return std::nullopt;
  return b;
}

Bordism Bordism::identity(const Fiber& f) {
  std::vector<std::pair<int, int>> diag;
  for (int i = 0; i < f.size(); ++i) diag.emplace_back(i, i);
  return make(f, f, std::move(diag));
}

bool Bordism::has(int t, int s) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(t, s));
}

Bordism Bordism::compose(const Fiber& src, const Fiber& mid, const Fiber& tgt,
                         const Bordism& then) const {
  check(tgt_size_ == then.src_size_ && mid.size() == tgt_size_, "ValidationError",
        "bordism composition size mismatch");
  std::set<std::pair<int, int>> out;
  for (auto [t, s] : pairs_)
    for (auto [s2, u] : then.pairs_)
      if (s == s2) out.emplace(t, u);
  Bordism b;
  b.src_size_ = src_size_;
  b.tgt_size_ = then.tgt_size_;
  b.pairs_.assign(out.begin(), out.end());
  std::string err = validate(src, tgt, b.pairs_);
  check(err.empty(), "ValidationError", "composite is not a bordism (" + err + ")");
  (void)mid;
  return b;
}

Bordism Bordism::transpose() const {
  Bordism b;
  b.src_size_ = tgt_size_;
  b.tgt_size_ = src_size_;
  for (auto [t, s] : pairs_) b.pairs_.emplace_back(s, t);
  std::sort(b.pairs_.begin(), b.pairs_.end());
  return b;
}

bool Bordism::is_identity_pattern(const Fiber& src, const Fiber& tgt) const {
  if (src.word() != tgt.word()) return false;
  return *this == identity(src);
}

std::vector<Bordism> enumerate_bordisms(const Fiber& src, const Fiber& tgt) {
  std::vector<Bordism> out;
  auto src_sing = src.singulars();
  auto tgt_sing = tgt.singulars();
  auto src_reg = src.regulars();
  auto tgt_reg = tgt.regulars();
  // No bordism exists if singulars (resp. regulars) have no possible image.
  if (!src_sing.empty() && tgt_sing.empty()) return out;
  if (!tgt_reg.empty() && src_reg.empty()) return out;
  size_t nf = src_sing.empty() ? 1 : 1;
  for (size_t i = 0; i < src_sing.size(); ++i) nf *= tgt_sing.size();
  size_t nc = 1;
  for (size_t i = 0; i < tgt_reg.size(); ++i) nc *= src_reg.size();
  for (size_t fi = 0; fi < nf; ++fi) {
    // decode singular function choice
    std::vector<std::pair<int, int>> fixed;
    size_t rem = fi;
    bool ok = true;
    int last = -1;
    for (int t : src_sing) {
      int s = tgt_sing[rem % tgt_sing.size()];
      rem /= tgt_sing.size();
      if (s < last) {  // frame-monotone pruning (non-crossing forces it)
        ok = false;
        break;
      }
      last = s;
      fixed.emplace_back(t, s);
    }
    if (!ok) continue;
    for (size_t ci = 0; ci < nc; ++ci) {
      auto gen = fixed;
      size_t r = ci;
      bool mono = true;
      int prev = -1;
      for (int s : tgt_reg) {
        int t = src_reg[r % src_reg.size()];
        r /= src_reg.size();
        if (t < prev) {
          mono = false;
          break;
        }
        prev = t;
        gen.emplace_back(t, s);
      }
      if (!mono) continue;
      auto b = Bordism::try_make(src, tgt, gen);
      if (b && std::find(out.begin(), out.end(), *b) == out.end()) out.push_back(*b);
    }
  }
  std::sort(out.begin(), out.end(), [](const Bordism& a, const Bordism& b) {
    return a.pairs() < b.pairs();
  });
  return out;
}

}  // namespace trusskit
