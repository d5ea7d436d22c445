#include "tropreal/valuegroup.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tropreal/errors.hpp"

namespace tropreal {

std::string_view alpha_name(Alpha a) {
  switch (a) {
    case Alpha::a11: return "a11";
    case Alpha::a12: return "a12";
    case Alpha::a21: return "a21";
    case Alpha::a22: return "a22";
  }
  return "?";
}

std::optional<Alpha> parse_alpha(std::string_view name) {
  for (Alpha a : kAllAlphas)
    if (alpha_name(a) == name) return a;
  if (name == "alpha11") return Alpha::a11;
  if (name == "alpha12") return Alpha::a12;
  if (name == "alpha21") return Alpha::a21;
  if (name == "alpha22") return Alpha::a22;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = seed % 97 + 2, c = seed % 89 + 1, g = 1, r = 1, q = 1, x, ys;
  const unsigned long m = 64;
  auto f = [&](const Integer& v) {
    Integer out = v * v + c;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
    return out;
  };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < m && k + i < r; ++i) {
        y = f(y);
        q = q * abs(Integer(x - y));
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(Integer(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = n;
  for (unsigned long seed = 1; d == n; ++seed) d = pollard_brent(n, seed);
  factor_into(d, out);
  factor_into(exact_div(n, d), out);
}

}  // namespace

std::map<Integer, unsigned> factorize(const Integer& n) {
  if (n <= 0) throw DomainError("factorize expects a positive integer, got " + n.get_str());
  std::map<Integer, unsigned> out;
  Integer rest = n;
  for (unsigned long p = 2; p < 10000 && rest > 1; ++p) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++out[Integer(p)];
      rest /= p;
    }
    if (Integer(p) * p > rest) break;
  }
  if (rest > 1) factor_into(rest, out);
  return out;
}

// ---------------------------------------------------------------------------
// MulValue

void MulValue::normalize() {
  std::erase_if(alpha_, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(primes_, [](const auto& kv) { return kv.second == 0; });
  phase_ = frac(phase_);
}

MulValue MulValue::alpha(Alpha symbol, const Rational& exponent) {
  MulValue v;
  v.alpha_[symbol] = exponent;
  v.normalize();
  return v;
}

MulValue MulValue::scalar(const Rational& positive, const Rational& exponent) {
  if (positive <= 0) throw DomainError("scalar generator must be positive, got " + to_string(positive));
  MulValue v;
  for (const auto& [p, k] : factorize(positive.get_num())) v.primes_[p] += exponent * k;
  for (const auto& [p, k] : factorize(positive.get_den())) v.primes_[p] -= exponent * k;
  for (auto& [p, e] : v.primes_) e.canonicalize();
  v.normalize();
  return v;
}

MulValue MulValue::phase(const Rational& turns) {
  MulValue v;
  v.phase_ = frac(turns);
  return v;
}

MulValue MulValue::from_rational(const Rational& q) {
  if (q == 0) throw DomainError("zero is not an element of the multiplicative group");
  MulValue v = scalar(q < 0 ? Rational(-q) : q);
  if (q < 0) v.phase_ = Rational(1, 2);
  return v;
}

bool MulValue::is_identity() const noexcept {
  return alpha_.empty() && primes_.empty() && phase_ == 0;
}

MulValue MulValue::inverse() const {
  MulValue v;
  for (const auto& [a, e] : alpha_) v.alpha_[a] = -e;
  for (const auto& [p, e] : primes_) v.primes_[p] = -e;
  v.phase_ = -phase_;
  v.normalize();
  return v;
}

MulValue operator*(const MulValue& a, const MulValue& b) {
  MulValue v = a;
  for (const auto& [s, e] : b.alpha_) v.alpha_[s] += e;
  for (const auto& [p, e] : b.primes_) v.primes_[p] += e;
  v.phase_ += b.phase_;
  v.normalize();
  return v;
}

MulValue mv_mul(const MulValue& a, const MulValue& b) { return a * b; }

MulValue mv_pow(const MulValue& a, const Rational& q) {
  MulValue v;
  for (const auto& [s, e] : a.alpha_exponents()) v = v * MulValue::alpha(s, e * q);
  for (const auto& [p, e] : a.scalar_exponents()) {
    Rational r = e * q;
    r.canonicalize();
    v = v * MulValue::scalar(Rational(p), r);
  }
  Rational ph = a.phase_turns() * q;
  ph.canonicalize();
  return v * MulValue::phase(ph);
}

MulValue mv_root(const MulValue& a, const Integer& k) {
  if (k < 1) throw DomainError("root index must be positive, got " + k.get_str());
  return mv_pow(a, make_rational(1, k));
}

std::string to_string(const MulValue& v) {
  if (v.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " * ";
    first = false;
  };
  for (const auto& [a, e] : v.alpha_exponents()) {
    sep();
    os << alpha_name(a);
    if (e != 1) os << '^' << to_string(e);
  }
  for (const auto& [p, e] : v.scalar_exponents()) {
    sep();
    os << p.get_str();
    if (e != 1) os << '^' << to_string(e);
  }
  if (v.phase_turns() != 0) {
    sep();
    os << "e(" << to_string(v.phase_turns()) << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Modes

std::string_view mode_name(ModeKind kind) {
  switch (kind) {
    case ModeKind::formal: return "formal";
    case ModeKind::exact: return "exact";
    case ModeKind::numeric: return "numeric";
  }
  return "?";
}

std::optional<ModeKind> parse_mode(std::string_view name) {
  if (name == "formal" || name == "FORMAL") return ModeKind::formal;
  if (name == "exact" || name == "EXACT") return ModeKind::exact;
  if (name == "numeric" || name == "NUMERIC") return ModeKind::numeric;
  return std::nullopt;
}

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::no: return "false";
    case Decision::yes: return "true";
    case Decision::undecided: return "undecided";
  }
  return "?";
}

EqualityMode EqualityMode::exact(const std::map<Alpha, PolarRational>& values) {
  EqualityMode m;
  m.kind = ModeKind::exact;
  for (const auto& [a, v] : values) m.values[a] = v;
  return m;
}

EqualityMode EqualityMode::numeric(const std::map<Alpha, std::complex<double>>& values, double tolerance) {
  if (!(tolerance > 0)) throw ConfigError("numeric tolerance must be positive");
  EqualityMode m;
  m.kind = ModeKind::numeric;
  m.tolerance = tolerance;
  for (const auto& [a, v] : values) m.values[a] = v;
  return m;
}

std::complex<double> to_complex(const MultiplierSpec& spec) {
  if (const auto* p = std::get_if<PolarRational>(&spec)) {
    return std::polar(p->modulus.get_d(), 2 * std::numbers::pi * frac(p->turns).get_d());
  }
  if (const auto* c = std::get_if<std::complex<double>>(&spec)) return *c;
  throw ConfigError("a formal multiplier has no numeric value");
}

MulValue mv_substitute(const MulValue& a, const EqualityMode& mode) {
  if (mode.kind == ModeKind::numeric) throw ConfigError("numeric mode has no exact substitution");
  MulValue out;
  for (const auto& [p, e] : a.scalar_exponents()) out = out * MulValue::scalar(Rational(p), e);
  out = out * MulValue::phase(a.phase_turns());
  for (const auto& [sym, e] : a.alpha_exponents()) {
    const auto it = mode.values.find(sym);
    if (it == mode.values.end()) {
      if (mode.kind == ModeKind::formal) {
        out = out * MulValue::alpha(sym, e);
        continue;
      }
      throw ConfigError(std::string("no exact value assigned to ") + std::string(alpha_name(sym)));
    }
    if (mode.kind == ModeKind::formal) {
      const auto* mono = std::get_if<MulValue>(&it->second);
      if (mono == nullptr) {
        // Values given but treated as independent symbols.
        out = out * MulValue::alpha(sym, e);
      } else {
        out = out * mv_pow(*mono, e);
      }
      continue;
    }
    const auto* polar = std::get_if<PolarRational>(&it->second);
    if (polar == nullptr) {
      throw ConfigError(std::string("exact mode needs a polar-rational value for ") +
                        std::string(alpha_name(sym)));
    }
    if (polar->modulus <= 0) throw ConfigError("multiplier modulus must be positive");
    Rational ph = frac(polar->turns) * e;
    ph.canonicalize();
    out = out * MulValue::scalar(polar->modulus, e) * MulValue::phase(ph);
  }
  return out;
}

std::complex<double> mv_eval_numeric(const MulValue& a,
                                     const std::map<Alpha, std::complex<double>>& assignment) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double log_modulus = 0.0;
  double angle = two_pi * a.phase_turns().get_d();
  for (const auto& [sym, e] : a.alpha_exponents()) {
    const auto it = assignment.find(sym);
    if (it == assignment.end()) {
      throw ConfigError(std::string("no numeric value assigned to ") + std::string(alpha_name(sym)));
    }
    const std::complex<double> z = it->second;
    if (std::abs(z) == 0.0) {
      throw DomainError(std::string("multiplier ") + std::string(alpha_name(sym)) + " is zero");
    }
    double theta = std::arg(z);
    if (theta < 0) theta += two_pi;
    log_modulus += e.get_d() * std::log(std::abs(z));
    angle += e.get_d() * theta;
  }
  for (const auto& [p, e] : a.scalar_exponents()) log_modulus += e.get_d() * std::log(p.get_d());
  return std::polar(std::exp(log_modulus), angle);
}

OneTest mv_is_one(const MulValue& a, const EqualityMode& mode) {
  OneTest t;
  if (mode.kind == ModeKind::numeric) {
    std::map<Alpha, std::complex<double>> numeric;
    for (const auto& [sym, spec] : mode.values) {
      if (!std::holds_alternative<MulValue>(spec)) numeric[sym] = to_complex(spec);
    }
    const std::complex<double> z = mv_eval_numeric(a, numeric);
    t.margin = std::abs(z - 1.0);
    if (t.margin <= mode.tolerance) {
      t.verdict = Decision::yes;
    } else if (t.margin <= mode.tolerance * kUndecidedFactor) {
      t.verdict = Decision::undecided;
    } else {
      t.verdict = Decision::no;
    }
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "|value - 1| = " << t.margin << " (tolerance " << mode.tolerance << ")";
    t.certificate = os.str();
    return t;
  }
  const MulValue v = mv_substitute(a, mode);
  if (v.is_identity()) {
    t.verdict = Decision::yes;
    t.certificate = "identity";
    t.margin = 0.0;
  } else {
    t.verdict = Decision::no;
    t.certificate = "nontrivial: " + to_string(v);
    t.margin = 1.0;
  }
  return t;
}

}  // namespace tropreal
