#include "unitaylor/polyalg/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "unitaylor/errors.hpp"

namespace unitaylor {

namespace {

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(INT64_MAX)) throw DomainError("enumeration index overflow");
  }
  return static_cast<std::int64_t>(r);
}

// Number of k-tuples of nonnegative integers summing to m.
std::int64_t compositions(int m, std::size_t k) {
  if (k == 0) return m == 0 ? 1 : 0;
  return binom(m + static_cast<std::int64_t>(k) - 1, static_cast<std::int64_t>(k) - 1);
}

}  // namespace

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t var, int k) {
  MultiIndex a(dim);
  a[var] = k;
  return a;
}

int MultiIndex::order() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i] > other.parts_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < parts_.size(); ++i) r.parts_[i] += o.parts_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < parts_.size(); ++i) r.parts_[i] -= o.parts_[i];
  return r;
}

std::string MultiIndex::to_string() const {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) s << (i ? "," : "") << parts_[i];
  s << ')';
  return s.str();
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return a.parts() > b.parts();
}

MultiIndexEnum::MultiIndexEnum(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("enumeration needs dimension >= 1");
}

std::int64_t MultiIndexEnum::count_up_to(int n) const {
  if (n < 0) return 0;
  return binom(n + static_cast<std::int64_t>(dim_), static_cast<std::int64_t>(dim_));
}

std::int64_t MultiIndexEnum::index_of(const MultiIndex& a) const {
  if (a.dimension() != dim_) throw PreconditionError("multi-index dimension mismatch");
  int n = a.order();
  std::int64_t idx = count_up_to(n - 1);
  int rem = n;
  for (std::size_t i = 0; i + 1 < dim_; ++i) {
    for (int v = rem; v > a[i]; --v) idx += compositions(rem - v, dim_ - i - 1);
    rem -= a[i];
  }
  return idx;
}

MultiIndex MultiIndexEnum::at(std::int64_t j) const {
  if (j < 0) throw PreconditionError("enumeration index must be >= 0");
  int n = 0;
  while (count_up_to(n) <= j) ++n;
  std::int64_t r = j - count_up_to(n - 1);
  MultiIndex a(dim_);
  int rem = n;
  for (std::size_t i = 0; i + 1 < dim_; ++i) {
    for (int v = rem; v >= 0; --v) {
      std::int64_t c = compositions(rem - v, dim_ - i - 1);
      if (r < c) {
        a[i] = v;
        rem -= v;
        break;
      }
      r -= c;
    }
  }
  a[dim_ - 1] = rem;
  return a;
}

DerivativeFamily::DerivativeFamily(std::vector<MultiIndex> members) {
  for (auto& m : members) {
    if (!members_.empty() && m.dimension() != members_.begin()->dimension())
      throw PreconditionError("derivative family mixes dimensions");
    for (int p : m.parts())
      if (p < 0) throw PreconditionError("derivative orders must be >= 0");
    members_.insert(std::move(m));
  }
}

DerivativeFamily DerivativeFamily::values_only(std::size_t dim) {
  return DerivativeFamily({MultiIndex(dim)});
}

std::size_t DerivativeFamily::dimension() const {
  return members_.empty() ? 0 : members_.begin()->dimension();
}

bool DerivativeFamily::is_gapless() const {
  return gapless_closure().members_.size() == members_.size();
}

DerivativeFamily DerivativeFamily::gapless_closure() const {
  DerivativeFamily out;
  for (const auto& a : members_) {
    // Every beta <= alpha componentwise.
    MultiIndex b(a.dimension());
    while (true) {
      out.members_.insert(b);
      std::size_t k = 0;
      for (; k < b.dimension(); ++k) {
        if (b[k] < a[k]) {
          ++b[k];
          break;
        }
        b[k] = 0;
      }
      if (k == b.dimension()) break;
    }
  }
  return out;
}

DerivativeFamily DerivativeFamily::united(const DerivativeFamily& other) const {
  DerivativeFamily out = *this;
  for (const auto& m : other.members_) {
    if (!out.members_.empty() && m.dimension() != out.dimension())
      throw PreconditionError("derivative family mixes dimensions");
    out.members_.insert(m);
  }
  return out;
}

int DerivativeFamily::max_order_in(std::size_t var) const {
  int best = 0;
  for (const auto& m : members_) best = std::max(best, m[var]);
  return best;
}

}  // namespace unitaylor
