#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace koszul {

// Multiplicities indexed by (cohomological degree, Frobenius weight).
class BigradedDim {
 public:
  using Key = std::pair<int, int>;

  BigradedDim() = default;
  static BigradedDim singleton(int degree, int weight, long mult = 1) {
    BigradedDim b;
    b.add(degree, weight, mult);
    return b;
  }

  void add(int degree, int weight, long mult = 1) {
    if (mult == 0) return;
    long& slot = dims_[{degree, weight}];
    slot += mult;
    if (slot < 0) throw std::domain_error("negative multiplicity in bigraded table");
    if (slot == 0) dims_.erase({degree, weight});
  }
  long at(int degree, int weight) const {
    auto it = dims_.find({degree, weight});
    return it == dims_.end() ? 0 : it->second;
  }
  const std::map<Key, long>& dims() const { return dims_; }
  bool empty() const { return dims_.empty(); }
  long total() const {
    long t = 0;
    for (auto& [k, m] : dims_) t += m;
    return t;
  }

  BigradedDim& operator+=(const BigradedDim& o) {
    for (auto& [k, m] : o.dims_) add(k.first, k.second, m);
    return *this;
  }
  friend BigradedDim operator+(BigradedDim a, const BigradedDim& b) { return a += b; }
  friend bool operator==(const BigradedDim& a, const BigradedDim& b) { return a.dims_ == b.dims_; }
  friend bool operator!=(const BigradedDim& a, const BigradedDim& b) { return !(a == b); }

  std::string to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [k, m] : dims_) {
      os << (first ? "" : ", ") << "(" << k.first << "," << k.second << "):" << m;
      first = false;
    }
    os << "}";
    return os.str();
  }

 private:
  std::map<Key, long> dims_;
};

}  // namespace koszul
