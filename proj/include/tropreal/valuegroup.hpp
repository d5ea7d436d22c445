#pragma once

// A formal multiplicative abelian group that holds sigma, the flag coordinates
// mu and the vertex parameters beta. A value is
//
//     prod a_ij^{e_ij} * prod p^{r_p} * exp(2 pi i * phase)
//
// with rational exponents on the four multiplier symbols a11..a22, rational
// exponents on primes p, and a phase stored in turns modulo 1. Fractional
// powers follow the principal-branch convention: the stored phase
// representative in [0, 1) is scaled.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tropreal/exactmath.hpp"

namespace tropreal {

enum class Alpha { a11 = 0, a12 = 1, a21 = 2, a22 = 3 };

inline constexpr std::array<Alpha, 4> kAllAlphas{Alpha::a11, Alpha::a12, Alpha::a21, Alpha::a22};

std::string_view alpha_name(Alpha a);
std::optional<Alpha> parse_alpha(std::string_view name);

class MulValue {
 public:
  using AlphaMap = std::map<Alpha, Rational>;
  using PrimeMap = std::map<Integer, Rational>;

  /// The identity.
  MulValue() = default;

  static MulValue alpha(Alpha symbol, const Rational& exponent = 1);
  /// A positive rational raised to `exponent`, stored as prime powers.
  static MulValue scalar(const Rational& positive, const Rational& exponent = 1);
  static MulValue phase(const Rational& turns);
  static MulValue minus_one() { return phase(Rational(1, 2)); }
  /// Any nonzero rational: |q| as prime powers, sign as phase 0 or 1/2.
  static MulValue from_rational(const Rational& q);

  const AlphaMap& alpha_exponents() const noexcept { return alpha_; }
  const PrimeMap& scalar_exponents() const noexcept { return primes_; }
  const Rational& phase_turns() const noexcept { return phase_; }

  bool is_identity() const noexcept;
  /// True when no alpha symbol carries a nonzero exponent.
  bool is_alpha_free() const noexcept { return alpha_.empty(); }
  /// True when only the phase is nontrivial.
  bool is_pure_phase() const noexcept { return alpha_.empty() && primes_.empty(); }

  MulValue inverse() const;

  friend MulValue operator*(const MulValue& a, const MulValue& b);
  friend MulValue operator/(const MulValue& a, const MulValue& b) { return a * b.inverse(); }
  MulValue& operator*=(const MulValue& b) { return *this = *this * b; }
  friend bool operator==(const MulValue& a, const MulValue& b) = default;

 private:
  void normalize();

  AlphaMap alpha_;
  PrimeMap primes_;
  Rational phase_{0};
};

MulValue mv_mul(const MulValue& a, const MulValue& b);
/// Exponents and the stored phase representative scaled by q; phase renormalized mod 1.
MulValue mv_pow(const MulValue& a, const Rational& q);
/// Principal k-th root: phase(result) in [0, 1/k). Requires k >= 1.
MulValue mv_root(const MulValue& a, const Integer& k);

/// Human-readable form, e.g. "a12 * a21^-1 * 2^1/2 * e(1/4)"; identity prints as "1".
std::string to_string(const MulValue& v);

/// Factor a positive integer into primes (trial division, then Pollard rho).
std::map<Integer, unsigned> factorize(const Integer& n);

// ---------------------------------------------------------------------------
// Equality modes

/// A multiplier expressed as r * exp(2 pi i * turns) with r a positive rational.
struct PolarRational {
  Rational modulus{1};
  Rational turns{0};
  friend bool operator==(const PolarRational&, const PolarRational&) = default;
};

/// FORMAL: a monomial in the base symbols. EXACT: a polar rational. NUMERIC: a complex double.
using MultiplierSpec = std::variant<MulValue, PolarRational, std::complex<double>>;

enum class ModeKind { formal, exact, numeric };

std::string_view mode_name(ModeKind kind);
std::optional<ModeKind> parse_mode(std::string_view name);

inline constexpr double kDefaultTolerance = 1e-9;
/// NUMERIC distances in (tol, tol * kUndecidedFactor] are reported as undecided.
inline constexpr double kUndecidedFactor = 1e3;

struct EqualityMode {
  ModeKind kind = ModeKind::formal;
  double tolerance = kDefaultTolerance;
  /// Values of the symbols. In FORMAL mode a missing symbol stands for itself.
  std::map<Alpha, MultiplierSpec> values;

  static EqualityMode formal() { return {}; }
  static EqualityMode exact(const std::map<Alpha, PolarRational>& values);
  static EqualityMode numeric(const std::map<Alpha, std::complex<double>>& values,
                              double tolerance = kDefaultTolerance);
};

enum class Decision { no, yes, undecided };
std::string_view decision_name(Decision d);

struct OneTest {
  Decision verdict = Decision::no;
  std::string certificate;
  /// NUMERIC: |value - 1|; other modes: 0 when equal to one, 1 otherwise.
  double margin = 0.0;
};

/// Replace the alpha symbols by their values in FORMAL or EXACT mode.
/// Throws ConfigError for a symbol with nonzero exponent and no EXACT value.
MulValue mv_substitute(const MulValue& a, const EqualityMode& mode);

/// Decide whether a equals one in the given mode.
OneTest mv_is_one(const MulValue& a, const EqualityMode& mode);

/// Principal-branch numeric value. Missing or zero assignments throw.
std::complex<double> mv_eval_numeric(const MulValue& a,
                                     const std::map<Alpha, std::complex<double>>& assignment);

/// The complex value of a multiplier spec (FORMAL specs have none and throw ConfigError).
std::complex<double> to_complex(const MultiplierSpec& spec);

}  // namespace tropreal
