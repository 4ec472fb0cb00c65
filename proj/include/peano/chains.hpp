#pragma once

#include "peano/dilation.hpp"
#include "peano/metric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peano {

/// Sequence of distinct lattice unit cubes; consecutive cubes differ by a
/// step in {-1,0,1}^d \ {0}.
struct PolycubicChain {
  int dim = 0;
  std::vector<Cube> cubes;

  bool facet_continuous() const;
};

class InvalidChain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate_chain(const PolycubicChain& chain);

/// diam^d / vol of a union of unit cubes, as a metric key (squared for l2
/// in odd dimension).
Rational set_dilation(const std::vector<Cube>& cubes, const Metric& metric);
/// Largest set dilation over contiguous segments.
Rational chain_dilation(const PolycubicChain& chain, const Metric& metric);
/// Whether some contiguous segment has set dilation >= threshold (cheaper
/// than chain_dilation, stops at the first such segment).
bool chain_dilation_at_least(const std::vector<Cube>& cubes, const Metric& metric, const Rational& threshold);

struct CertificateReport {
  std::string lemma;
  int dim = 0;
  bool in_hypothesis = true;
  std::uint64_t search_space_size = 0;  // objects satisfying the hypothesis
  std::vector<std::string> violations;
  std::optional<Rational> extremal_value;  // as a key when it is a dilation
  std::string bound;                        // the certified inequality
  std::vector<Cube> witness;

  bool passed() const { return violations.empty(); }
};

/// Every 3D facet-continuous 4-chain whose cubes have empty common
/// intersection has chain dilation >= 14^3/16 (key), with equality attained.
CertificateReport certify_chain4_empty_3d();
/// Every 4D facet-continuous 7-chain with collinear Q3 Q4 Q5 has chain
/// dilation > 64.
CertificateReport certify_chain7_collinear_4d();
/// Every 6-subset of {0,1}^4 contains a pair differing in 4 coordinates or
/// two pairs differing in 3.
CertificateReport certify_antipodes_4d();
/// Every facet-continuous chain with s x s body (s >= 3) has three
/// consecutive collinear cubes.
CertificateReport verify_square_lemma(int s, std::uint64_t budget = 100'000'000ull);
/// Facet-continuous chains covering the s^3 cube (s = 3) have chain
/// dilation >= 14^3/16.
CertificateReport certify_cubic_body_3d(int s = 3, std::uint64_t budget = 2'000'000'000ull);
/// Facet-continuous chains covering the s^4 cube have chain dilation >= 169/4.
CertificateReport certify_cubic_body_4d(int s = 2, std::uint64_t budget = 2'000'000'000ull);

/// Number of directed facet-continuous chains covering the s^d grid.
std::uint64_t count_covering_chains(int dim, int s, std::uint64_t budget = 100'000'000ull);

}  // namespace peano
