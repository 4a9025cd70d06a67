#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trusskit/errors.hpp"

namespace trusskit {

// A 1-truss in zigzag normal form: a non-empty alternating word over
// {S (singular, dim 0), R (regular, dim 1)} in frame order. Entrance-path
// arrows run regular -> singular between frame-adjacent elements.
class Fiber {
public:
  static Fiber parse(const std::string& word);

  int size() const { return static_cast<int>(word_.size()); }
  bool singular(int i) const { return word_[static_cast<size_t>(i)] == 'S'; }
  int dim(int i) const { return singular(i) ? 0 : 1; }
  const std::string& word() const { return word_; }

  bool is_open() const { return !singular(0) && !singular(size() - 1); }
  bool is_closed() const { return singular(0) && singular(size() - 1); }

  // Entrance-path order: a <= b iff a == b, or adjacent with b singular.
  bool leq(int a, int b) const {
    if (a == b) return true;
    return (a == b - 1 || a == b + 1) && singular(b);
  }
  std::vector<int> down_set(int x) const;  // {y : y <= x}
  std::vector<int> up_set(int x) const;    // {y : x <= y}

  Fiber dual() const;  // S <-> R, frame order kept

  std::vector<int> singulars() const;
  std::vector<int> regulars() const;

  bool operator==(const Fiber& o) const { return word_ == o.word_; }
  bool operator<(const Fiber& o) const {
    if (word_.size() != o.word_.size()) return word_.size() < o.word_.size();
    return word_ < o.word_;
  }

private:
  std::string word_;
};

// A 1-truss bordism T ⇸ S: a closed Boolean relation, functional on
// singulars, cofunctional on regulars, non-crossing. Stored fully closed.
class Bordism {
public:
  Bordism() = default;

  // Closes the generating pairs and validates (A) and (B).
  static Bordism make(const Fiber& src, const Fiber& tgt,
                      std::vector<std::pair<int, int>> generating);
  static std::optional<Bordism> try_make(const Fiber& src, const Fiber& tgt,
                                         std::vector<std::pair<int, int>> generating);
  static Bordism identity(const Fiber& f);

  int src_size() const { return src_size_; }
  int tgt_size() const { return tgt_size_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool has(int t, int s) const;

  // Relational composition; the result is validated.
  Bordism compose(const Fiber& src, const Fiber& mid, const Fiber& tgt,
                  const Bordism& then) const;
  Bordism transpose() const;

  // The iso bordism pattern: closure of a dim-preserving frame bijection.
  // For fibers with equal words this is exactly the identity bordism.
  bool is_identity_pattern(const Fiber& src, const Fiber& tgt) const;

  bool operator==(const Bordism& o) const {
    return src_size_ == o.src_size_ && tgt_size_ == o.tgt_size_ && pairs_ == o.pairs_;
  }

private:
  int src_size_ = 0;
  int tgt_size_ = 0;
  std::vector<std::pair<int, int>> pairs_;  // sorted

  static std::vector<std::pair<int, int>> close(const Fiber& src, const Fiber& tgt,
                                                std::vector<std::pair<int, int>> pairs);
  // Returns an error description or empty string.
  static std::string validate(const Fiber& src, const Fiber& tgt,
                              const std::vector<std::pair<int, int>>& pairs);
};

// All bordisms src ⇸ tgt, in deterministic order (enumeration backbone).
std::vector<Bordism> enumerate_bordisms(const Fiber& src, const Fiber& tgt);

}  // namespace trusskit
