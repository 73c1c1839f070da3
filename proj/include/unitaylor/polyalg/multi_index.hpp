#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace unitaylor {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : parts_(dim, 0) {}
  MultiIndex(std::initializer_list<int> parts) : parts_(parts) {}
  explicit MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {}

  static MultiIndex unit(std::size_t dim, std::size_t var, int k = 1);

  std::size_t dimension() const { return parts_.size(); }
  int order() const;
  int operator[](std::size_t i) const { return parts_[i]; }
  int& operator[](std::size_t i) { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }

  // Componentwise <=.
  bool dominated_by(const MultiIndex& other) const;
  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> parts_;
};

// Enumeration order N_0, N_1, ...: lower total degree first; inside a
// degree block, lexicographically descending (z1^2, z1 z2, z2^2).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

inline constexpr const char* kEnumerationRule = "graded-lex-desc/1";

class MultiIndexEnum {
 public:
  explicit MultiIndexEnum(std::size_t dim);

  std::size_t dimension() const { return dim_; }
  std::int64_t index_of(const MultiIndex& a) const;
  MultiIndex at(std::int64_t j) const;
  // Number of multi-indices of total degree <= n.
  std::int64_t count_up_to(int n) const;
  // Last enumeration index inside the degree-n block.
  std::int64_t block_end(int n) const { return count_up_to(n) - 1; }

 private:
  std::size_t dim_;
};

// Set of derivative operators D_alpha.
class DerivativeFamily {
 public:
  DerivativeFamily() = default;
  explicit DerivativeFamily(std::vector<MultiIndex> members);

  static DerivativeFamily values_only(std::size_t dim);

  const std::set<MultiIndex, GradedLexLess>& members() const { return members_; }
  std::size_t dimension() const;
  bool is_gapless() const;
  DerivativeFamily gapless_closure() const;
  DerivativeFamily united(const DerivativeFamily& other) const;
  int max_order_in(std::size_t var) const;
  bool empty() const { return members_.empty(); }

 private:
  std::set<MultiIndex, GradedLexLess> members_;
};

}  // namespace unitaylor
