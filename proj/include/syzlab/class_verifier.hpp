#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "syzlab/bigint.hpp"
#include "syzlab/series.hpp"

namespace syzlab {

inline constexpr int kClassSchemaVersion = 1;

/// 6n^2 - 6n + 1: degree of the first Chern class of p_!(omega^n) in units
/// of lambda. Invariant under n -> 1 - n.
BigInt mumford_coeff(long n);

/// A K-theory class with t-power-series coefficients, kept only through its
/// rank and its first Chern class (a rational multiple of lambda).
class KClassSeries {
 public:
  explicit KClassSeries(std::size_t order);
  KClassSeries(std::vector<BigInt> rank, std::vector<BigRational> c1);

  /// The constant class of the given rank and c1, times t^degree.
  static KClassSeries monomial(const BigInt& rank, const BigRational& c1, std::size_t degree,
                               std::size_t order);

  std::size_t order() const noexcept { return rank_.size() - 1; }
  const std::vector<BigInt>& rank() const noexcept { return rank_; }
  const std::vector<BigRational>& c1() const noexcept { return c1_; }
  const BigInt& rank(std::size_t k) const { return rank_.at(k); }
  const BigRational& c1(std::size_t k) const { return c1_.at(k); }

  friend KClassSeries operator+(const KClassSeries& a, const KClassSeries& b);
  friend KClassSeries operator-(const KClassSeries& a, const KClassSeries& b);
  /// rank(AB) = rank(A) rank(B); c1(AB) = rank(A) c1(B) + rank(B) c1(A).
  friend KClassSeries operator*(const KClassSeries& a, const KClassSeries& b);
  friend bool operator==(const KClassSeries& a, const KClassSeries& b) {
    return a.rank_ == b.rank_ && a.c1_ == b.c1_;
  }

 private:
  std::vector<BigInt> rank_;
  std::vector<BigRational> c1_;
};

/// Choices for the inputs of the pushforward pipeline. The defaults are the
/// consistent ones; the alternatives reproduce printed variants.
struct PipelineVariant {
  /// c1 of p_!O_C(1) and p_!O_C(0) is +lambda (false: -lambda for both).
  bool plus_lambda_low_slots = true;
  /// c1 of p_!O_C(n) for n <= -1 is 6n^2 - 6n + 1 (false: 1 - 6n + n^2).
  bool six_on_square = true;
};

/// lambda_t(E^*) truncated at `order`, for a genus-g family.
KClassSeries lambda_t_dual_hodge(long g, std::size_t order);

/// N from the pushforward pipeline: minus the t^k coefficient of c1 of
/// lambda_t(E^*) * sum_j (-1)^j t^j (p_!O_P(1-j) - p_!O_C(1-j)),
/// with g = 2k - 1. `truncation` defaults to k + 1; throws
/// TruncationTooSmall if it is below k or not below g.
BigInt assemble_N_firstprinciples(long k, std::size_t truncation = 0,
                                  const PipelineVariant& variant = {});

/// Coefficient of t^k in t^2 (1 + t)^(2k-4) (-t^2 + (2k-4) t - (2k-13)).
BigInt n_bracket(long k);
/// -C(2k-4, k-4) + (2k-4) C(2k-4, k-3) - (2k-13) C(2k-4, k-2).
BigInt n_binomial(long k);
/// 6 (k+1) (k-1) (2k-4)! / ((k-2)! k!).
BigInt n_closed(long k);
/// 6 (k+1) (2k-4)! / ((k-2)! k!), the class of the k-gonal divisor.
BigInt hm_class(long k);

struct SeriesIdentityResult {
  bool id1_ok = false;
  bool id2_ok = false;
  bool combined_ok = false;
  /// Whether the alternative readings also hold; they are expected not to.
  bool id1_plus_variant_holds = false;
  bool id2_printed_sign_holds = false;
  std::string sign_note;
};

/// Checks, through t^order:
///   (1+t)^g (1 - sum (-1)^i (1 - 6i + 6i^2) t^i) = t (1+t)^(g-3) (t^2 - 10t + 1)
///   t (1+t)^(g-1) (g - t - (g-1) sum (-1)^i (1 - 2i) t^i)
///     = t (1+t)^(g-3) ((1+t)^2 (g-t) - 3(g-1)(1+t) + 2(g-1))
///     = t (1+t)^(g-3) (-t^3 + (g-2) t^2 + (2-g) t + 1)
/// and that their difference is t^2 (1+t)^(g-3) (t^2 + (3-g) t + (g-12)).
SeriesIdentityResult check_series_identities(long g, std::size_t order);

struct RankIdentityResult {
  BigInt wedge_form;     // C(g,k) g - C(g,k-1)
  BigInt quotient_form;  // C(g-1,k) (2k + g - 1)
  BigInt left;           // C(2k-2,k) (4k-2)
  BigInt right;          // C(2k-1,k-1) (2k-2)
  bool ok = false;
};
RankIdentityResult rank_identity_values(long k);
bool rank_identity(long k);

struct ClassResult {
  long k = 0;
  BigInt N_series, N_bracket, N_binomial, N_closed, HM;
  bool agree_ok = false;  // all four N values equal
  bool ratio_ok = false;  // N = (k-1) HM
  bool id1_ok = false;
  bool id2_ok = false;
  bool rank_ok = false;
  BigInt rank_value;
  std::vector<std::string> notes;
  bool all_ok() const { return agree_ok && ratio_ok && id1_ok && id2_ok && rank_ok; }
};

/// Every check for one k >= 3. The series identities use g = 2k - 1 and run
/// through t^(k+1), which covers the coefficient that defines N.
ClassResult verify_class(long k);
/// verify_class for k = 3..kmax, in parallel.
std::vector<ClassResult> verify_class_range(long kmax, unsigned threads = 1);

nlohmann::ordered_json to_json(const ClassResult& result);

}  // namespace syzlab
