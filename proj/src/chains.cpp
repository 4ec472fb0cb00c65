#include "peano/chains.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace peano {

namespace {

using Wide = __int128;

Wide wide_pow(Wide b, int e) {
  Wide out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

// Key numerator of the diameter between two unit cubes.
Wide pair_numerator(const Cube& a, const Cube& b, const Metric& m) {
  Wide base = 0;
  for (int i = 0; i < m.dim; ++i) {
    Wide side = std::abs(a[i] - b[i]) + 1;
    switch (m.norm) {
      case Norm::L1: base += side; break;
      case Norm::Linf: base = std::max(base, side); break;
      case Norm::L2: base += side * side; break;
    }
  }
  if (m.norm == Norm::L2) return wide_pow(base, m.dim % 2 == 0 ? m.dim / 2 : m.dim);
  return wide_pow(base, m.dim);
}

Integer to_big(Wide w) {
  // magnitudes here stay far below 2^126
  Integer hi = to_integer(static_cast<std::int64_t>(w >> 62));
  Integer lo = to_integer(static_cast<std::int64_t>(w & ((Wide(1) << 62) - 1)));
  return hi * int_pow(Integer(2), 62) + lo;
}

// key(numerator, vol) >= p/q  <=>  numerator * q >= p * vol^tp
bool key_at_least(Wide num, int vol, const Metric& m, Wide p, Wide q) {
  return num * q >= p * wide_pow(vol, m.time_power());
}

bool key_above(Wide num, int vol, const Metric& m, Wide p, Wide q) {
  return num * q > p * wide_pow(vol, m.time_power());
}

Wide small(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("threshold too large");
  return z.get_si();
}

int step_axis(const Cube& a, const Cube& b, int dim) {
  int axis = -1;
  for (int i = 0; i < dim; ++i) {
    int d = b[i] - a[i];
    if (d == 0) continue;
    if (std::abs(d) != 1 || axis >= 0) return -1;
    axis = i;
  }
  return axis;
}

bool empty_intersection(const std::vector<Cube>& cubes, int dim) {
  for (int a = 0; a < dim; ++a) {
    int lo = cubes[0][a], hi = cubes[0][a];
    for (const auto& c : cubes) {
      lo = std::min(lo, c[a]);
      hi = std::max(hi, c[a]);
    }
    if (hi - lo > 1) return true;
  }
  return false;
}

// Facet-continuous chains of the given length starting at the origin, one
// per class under signed axis permutations: axes are used for the first
// time in increasing order and first in the positive direction.
void for_each_canonical_chain(int dim, int length, const std::function<void(const std::vector<Cube>&)>& visit) {
  std::vector<Cube> cubes{Cube{}};
  std::function<void(int)> rec = [&](int used) {
    if (static_cast<int>(cubes.size()) == length) {
      visit(cubes);
      return;
    }
    for (int a = 0; a < std::min(used + 1, dim); ++a)
      for (int sign : {1, -1}) {
        if (a == used && sign < 0) continue;
        Cube next = cubes.back();
        next[a] += sign;
        if (std::find(cubes.begin(), cubes.end(), next) != cubes.end()) continue;
        cubes.push_back(next);
        rec(std::max(used, a + 1));
        cubes.pop_back();
      }
  };
  rec(0);
}

// Directed facet-continuous chains covering the s^d grid.
class CoverSearch {
 public:
  CoverSearch(int dim, int s, std::uint64_t budget) : dim_(dim), s_(s), budget_(budget) {
    n_ = 1;
    for (int a = 0; a < dim; ++a) n_ *= s;
    visited_.assign(n_, 0);
  }

  // visit(cubes) returns false to prune (a prefix already decided the outcome);
  // done(cubes) is called for complete chains.
  void run(const std::function<bool(const std::vector<Cube>&)>& prefix,
           const std::function<void(const std::vector<Cube>&)>& done) {
    for (int i = 0; i < n_; ++i) {
      path_.assign(1, cube_of(i));
      visited_[i] = 1;
      if (prefix(path_)) extend(prefix, done);
      visited_[i] = 0;
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t complete() const { return complete_; }
  std::uint64_t pruned() const { return pruned_; }

 private:
  Cube cube_of(int i) const {
    Cube c;
    for (int a = 0; a < dim_; ++a, i /= s_) c[a] = i % s_;
    return c;
  }
  int index_of(const Cube& c) const {
    int idx = 0;
    for (int a = dim_ - 1; a >= 0; --a) {
      if (c[a] < 0 || c[a] >= s_) return -1;
      idx = idx * s_ + c[a];
    }
    return idx;
  }

  bool connected_rest() const {
    int start = -1, remaining = 0;
    for (int i = 0; i < n_; ++i)
      if (!visited_[i]) {
        ++remaining;
        if (start < 0) start = i;
      }
    if (remaining <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      Cube c = cube_of(stack.back());
      stack.pop_back();
      for (int a = 0; a < dim_; ++a)
        for (int sign : {1, -1}) {
          Cube n = c;
          n[a] += sign;
          int j = index_of(n);
          if (j < 0 || visited_[j] || seen[j]) continue;
          seen[j] = 1;
          ++count;
          stack.push_back(j);
        }
    }
    return count == remaining;
  }

  void extend(const std::function<bool(const std::vector<Cube>&)>& prefix,
              const std::function<void(const std::vector<Cube>&)>& done) {
    if (++nodes_ > budget_) throw BudgetExceeded("covering chain enumeration budget exhausted");
    if (static_cast<int>(path_.size()) == n_) {
      ++complete_;
      done(path_);
      return;
    }
    if (!connected_rest()) return;
    for (int a = 0; a < dim_; ++a)
      for (int sign : {1, -1}) {
        Cube n = path_.back();
        n[a] += sign;
        int j = index_of(n);
        if (j < 0 || visited_[j]) continue;
        visited_[j] = 1;
        path_.push_back(n);
        if (prefix(path_)) extend(prefix, done);
        else ++pruned_;
        path_.pop_back();
        visited_[j] = 0;
      }
  }

  int dim_, s_, n_;
  std::uint64_t budget_;
  std::vector<char> visited_;
  std::vector<Cube> path_;
  std::uint64_t nodes_ = 0, complete_ = 0, pruned_ = 0;
};

std::string chain_text(const std::vector<Cube>& cubes, int dim) {
  std::string out;
  for (const auto& c : cubes) out += to_string(c, dim);
  return out;
}

// Whether a segment ending at the last cube has key >= p/q.
bool last_segment_reaches(const std::vector<Cube>& cubes, const Metric& m, Wide p, Wide q) {
  const int j = static_cast<int>(cubes.size()) - 1;
  Wide best = 0;
  for (int i = j; i >= 0; --i) {
    best = std::max(best, pair_numerator(cubes[i], cubes[j], m));
    // segments [i, j] with the running maximum over pairs ending at j
    if (key_at_least(best, j - i + 1, m, p, q)) return true;
  }
  return false;
}

}  // namespace

bool PolycubicChain::facet_continuous() const {
  for (std::size_t i = 1; i < cubes.size(); ++i)
    if (step_axis(cubes[i - 1], cubes[i], dim) < 0) return false;
  return true;
}

void validate_chain(const PolycubicChain& chain) {
  if (chain.dim < 1 || chain.dim > kMaxDim) throw InvalidChain("bad chain dimension");
  if (chain.cubes.empty()) throw InvalidChain("empty chain");
  for (std::size_t i = 0; i < chain.cubes.size(); ++i) {
    for (int a = chain.dim; a < kMaxDim; ++a)
      if (chain.cubes[i][a] != 0) throw DimensionMismatch("cube has coordinates past the dimension");
    for (std::size_t j = 0; j < i; ++j)
      if (chain.cubes[i] == chain.cubes[j]) throw InvalidChain("repeated cube " + to_string(chain.cubes[i], chain.dim));
    if (i == 0) continue;
    bool moved = false;
    for (int a = 0; a < chain.dim; ++a) {
      int d = chain.cubes[i][a] - chain.cubes[i - 1][a];
      if (std::abs(d) > 1) throw InvalidChain("cubes " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not adjacent");
      moved |= d != 0;
    }
    if (!moved) throw InvalidChain("zero step");
  }
}

Rational set_dilation(const std::vector<Cube>& cubes, const Metric& metric) {
  if (cubes.empty()) throw std::invalid_argument("set dilation of an empty set");
  Wide best = 0;
  for (std::size_t i = 0; i < cubes.size(); ++i)
    for (std::size_t j = i; j < cubes.size(); ++j) best = std::max(best, pair_numerator(cubes[i], cubes[j], metric));
  Integer vol = int_pow(to_integer(static_cast<std::int64_t>(cubes.size())), metric.time_power());
  return make_rational(to_big(best), vol);
}

Rational chain_dilation(const PolycubicChain& chain, const Metric& metric) {
  validate_chain(chain);
  if (metric.dim != chain.dim) throw DimensionMismatch("metric and chain dimensions differ");
  const auto& c = chain.cubes;
  const int n = static_cast<int>(c.size());
  Rational best = 0;
  // diam[i] holds the diameter numerator of segment [i, j] as j grows
  std::vector<Wide> diam(n, 0);
  for (int j = 0; j < n; ++j) {
    Wide run = 0;
    for (int i = j; i >= 0; --i) {
      run = std::max(run, pair_numerator(c[i], c[j], metric));
      diam[i] = std::max(diam[i], run);
      Rational key = make_rational(to_big(diam[i]), int_pow(to_integer(j - i + 1), metric.time_power()));
      if (key > best) best = key;
    }
  }
  return best;
}

bool chain_dilation_at_least(const std::vector<Cube>& cubes, const Metric& metric, const Rational& threshold) {
  const Wide p = small(threshold.get_num()), q = small(threshold.get_den());
  std::vector<Cube> prefix;
  for (const auto& c : cubes) {
    prefix.push_back(c);
    if (last_segment_reaches(prefix, metric, p, q)) return true;
  }
  return false;
}

CertificateReport certify_chain4_empty_3d() {
  CertificateReport r;
  r.lemma = "chain4empty3d";
  r.dim = 3;
  const Metric m{Norm::L2, 3};
  const Rational bound = make_rational(14 * 14 * 14, 16);
  r.bound = "chain dilation >= 14^3/16 (key of 7*sqrt(14)/2)";
  for_each_canonical_chain(3, 4, [&](const std::vector<Cube>& cubes) {
    if (!empty_intersection(cubes, 3)) return;
    ++r.search_space_size;
    Rational dil = chain_dilation(PolycubicChain{3, cubes}, m);
    if (dil < bound) r.violations.push_back(chain_text(cubes, 3) + " has " + to_string(dil));
    if (!r.extremal_value || dil < *r.extremal_value) {
      r.extremal_value = dil;
      r.witness = cubes;
    }
  });
  if (r.extremal_value && *r.extremal_value != bound) r.violations.push_back("minimum " + to_string(*r.extremal_value) + " differs from the bound");
  return r;
}

CertificateReport certify_chain7_collinear_4d() {
  CertificateReport r;
  r.lemma = "chain7collinear4d";
  r.dim = 4;
  const Metric m{Norm::L2, 4};
  const Rational bound = 64;
  r.bound = "chain dilation > 64";
  for_each_canonical_chain(4, 7, [&](const std::vector<Cube>& c) {
    // Q3, Q4, Q5 collinear: equal steps Q3->Q4 and Q4->Q5
    for (int a = 0; a < 4; ++a)
      if (c[3][a] - c[2][a] != c[4][a] - c[3][a]) return;
    ++r.search_space_size;
    Rational dil = chain_dilation(PolycubicChain{4, c}, m);
    if (dil <= bound) r.violations.push_back(chain_text(c, 4) + " has " + to_string(dil));
    if (!r.extremal_value || dil < *r.extremal_value) {
      r.extremal_value = dil;
      r.witness = c;
    }
  });
  return r;
}

CertificateReport certify_antipodes_4d() {
  CertificateReport r;
  r.lemma = "antipode4d";
  r.dim = 4;
  r.bound = "a 4-antipode pair or two 3-antipode pairs";
  int fewest = 99;
  for (int mask = 0; mask < (1 << 16); ++mask) {
    if (__builtin_popcount(mask) != 6) continue;
    ++r.search_space_size;
    std::vector<int> v;
    for (int i = 0; i < 16; ++i)
      if (mask >> i & 1) v.push_back(i);
    int four = 0, three = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        int d = __builtin_popcount(v[i] ^ v[j]);
        four += d == 4;
        three += d == 3;
      }
    const int score = four > 0 ? 99 : three;
    if (score < fewest) {
      fewest = score;
      r.witness.clear();
      for (int x : v) {
        Cube c;
        for (int a = 0; a < 4; ++a) c[a] = x >> a & 1;
        r.witness.push_back(c);
      }
    }
    if (four == 0 && three < 2) {
      std::string s;
      for (int x : v) s += std::to_string(x) + " ";
      r.violations.push_back("subset " + s);
    }
  }
  // smallest number of 3-antipode pairs among subsets without 4-antipodes
  r.extremal_value = Rational(fewest);
  return r;
}

CertificateReport verify_square_lemma(int s, std::uint64_t budget) {
  if (s < 1) throw std::invalid_argument("square side must be positive");
  CertificateReport r;
  r.lemma = "square";
  r.dim = 2;
  r.bound = "three consecutive collinear squares";
  if (s * s <= 4) {
    r.in_hypothesis = false;
    return r;
  }
  CoverSearch search(2, s, budget);
  search.run([](const std::vector<Cube>&) { return true; },
             [&](const std::vector<Cube>& c) {
               bool found = false;
               for (std::size_t i = 2; i < c.size() && !found; ++i)
                 found = c[i][0] - c[i - 1][0] == c[i - 1][0] - c[i - 2][0] &&
                         c[i][1] - c[i - 1][1] == c[i - 1][1] - c[i - 2][1];
               if (!found) r.violations.push_back(chain_text(c, 2));
             });
  r.search_space_size = search.complete();
  return r;
}

namespace {

CertificateReport certify_cubic_body(const std::string& name, int dim, int s, const Rational& bound,
                                     std::uint64_t budget) {
  CertificateReport r;
  r.lemma = name;
  r.dim = dim;
  r.bound = "chain dilation >= " + to_string(bound);
  int n = 1;
  for (int a = 0; a < dim; ++a) n *= s;
  if (n < 2) {
    r.in_hypothesis = false;
    return r;
  }
  const Metric m{Norm::L2, dim};
  const Wide p = small(bound.get_num()), q = small(bound.get_den());
  CoverSearch search(dim, s, budget);
  // once a segment reaches the bound every completion does too
  search.run([&](const std::vector<Cube>& prefix) { return !last_segment_reaches(prefix, m, p, q); },
             [&](const std::vector<Cube>& c) { r.violations.push_back(chain_text(c, dim)); });
  // complete chains reached without any segment at the bound are violations;
  // pruned prefixes stand for all of their completions
  r.search_space_size = search.complete() + search.pruned();
  return r;
}

}  // namespace

CertificateReport certify_cubic_body_3d(int s, std::uint64_t budget) {
  return certify_cubic_body("cubicbody3d", 3, s, make_rational(14 * 14 * 14, 16), budget);
}

CertificateReport certify_cubic_body_4d(int s, std::uint64_t budget) {
  return certify_cubic_body("cubicbody4d", 4, s, make_rational(169, 4), budget);
}

std::uint64_t count_covering_chains(int dim, int s, std::uint64_t budget) {
  CoverSearch search(dim, s, budget);
  search.run([](const std::vector<Cube>&) { return true; }, [](const std::vector<Cube>&) {});
  return search.complete();
}

}  // namespace peano
