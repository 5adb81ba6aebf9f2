#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecoidx/error.hpp"
#include "ecoidx/metrics.hpp"

namespace ecoidx {

enum class FormulaId { C0, C1, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, C12, C13, C14, C10R };

inline constexpr std::array<FormulaId, 16> kAllFormulas = {
    FormulaId::C0,  FormulaId::C1,  FormulaId::C2,  FormulaId::C3,  FormulaId::C4,  FormulaId::C5,
    FormulaId::C6,  FormulaId::C7,  FormulaId::C8,  FormulaId::C9,  FormulaId::C10, FormulaId::C11,
    FormulaId::C12, FormulaId::C13, FormulaId::C14, FormulaId::C10R};

// The fifteen candidates that compete in a tournament (the rescaled C10 is a
// monotone image of C10 and would always tie with it).
inline constexpr std::array<FormulaId, 15> kTournamentFormulas = {
    FormulaId::C0, FormulaId::C1, FormulaId::C2,  FormulaId::C3,  FormulaId::C4,
    FormulaId::C5, FormulaId::C6, FormulaId::C7,  FormulaId::C8,  FormulaId::C9,
    FormulaId::C10, FormulaId::C11, FormulaId::C12, FormulaId::C13, FormulaId::C14};

constexpr std::string_view to_string(FormulaId id) {
  constexpr std::array<std::string_view, 16> names = {"C0",  "C1",  "C2",  "C3",  "C4",  "C5",
                                                      "C6",  "C7",  "C8",  "C9",  "C10", "C11",
                                                      "C12", "C13", "C14", "C10R"};
  return names[static_cast<std::size_t>(id)];
}

inline std::optional<FormulaId> parse_formula_id(std::string_view s) {
  for (auto id : kAllFormulas)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

inline constexpr double kLogEpsilon = 1e-6;
inline const double kC10Max = (std::numbers::ln2 + 1.0) / 2.0;

struct FormulaInput {
  MetricsBundle bundle;
  std::size_t m = 24;  // maximum reportable collaborations per respondent
};

struct FormulaValue {
  double value = 0.0;
  double bound_low = 0.0;
  double bound_high = 0.0;
  std::vector<std::string> warnings;
};

struct FormulaOptions {
  // Clamp |mod| to kLogEpsilon inside C0's log10(mod^2) instead of throwing.
  bool guard_log_domain = true;
};

struct Bounds {
  double low;
  double high;
};

// Theoretical range of each formula for bundles whose metrics lie in their own
// ranges and with avg_collaborations <= m.
inline Bounds formula_bounds(FormulaId id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double ln2 = std::numbers::ln2;
  switch (id) {
    case FormulaId::C0: return {0.0, inf};
    case FormulaId::C1: return {0.0, 3.25};
    case FormulaId::C2: return {-1.0, 3.5};
    case FormulaId::C3: return {0.0, 1.0};
    case FormulaId::C4: return {0.0, 1.0};
    case FormulaId::C5: return {0.0, 3.0};
    case FormulaId::C6: return {0.0, 1.0};
    case FormulaId::C7: return {0.0, (ln2 + 1.0) / 2.0};
    case FormulaId::C8: return {-1.0 / 12.0, (ln2 + 5.0 / 6.0) / 2.0};
    case FormulaId::C9: return {0.0, (ln2 + 3.0) / 4.0};
    case FormulaId::C10: return {0.0, kC10Max};
    case FormulaId::C11: return {0.0, 1.0};
    case FormulaId::C12: return {0.0, (ln2 + 3.0) / 4.0};
    case FormulaId::C13: return {0.0, 1.0};
    case FormulaId::C14: return {0.0, 1.0};
    case FormulaId::C10R: return {1.0, 1.0 + 10.0 * kC10Max};
  }
  return {0.0, 0.0};
}

// Number of bundle metrics each formula reads (m not counted).
inline std::size_t formula_metric_count(FormulaId id) {
  switch (id) {
    case FormulaId::C0: return 3;
    case FormulaId::C1: return 4;
    case FormulaId::C2: return 4;
    case FormulaId::C3: return 3;
    case FormulaId::C4: return 3;
    case FormulaId::C5: return 3;
    case FormulaId::C6: return 3;
    case FormulaId::C7: return 4;
    case FormulaId::C8: return 4;
    case FormulaId::C9: return 4;
    case FormulaId::C10: return 4;
    case FormulaId::C11: return 6;
    case FormulaId::C12: return 5;
    case FormulaId::C13: return 5;
    case FormulaId::C14: return 7;
    case FormulaId::C10R: return 4;
  }
  return 0;
}

inline double rescale_c10(double v) {
  if (!(v >= 0.0 && v <= kC10Max))
    throw Error(ErrorCode::OutOfBound, "C10 value " + std::to_string(v) + " outside [0, (ln 2 + 1)/2]");
  return 1.0 + 10.0 * v;
}

namespace detail {

inline double require(const std::optional<double>& field, const char* name, FormulaId id) {
  if (!field)
    throw Error(ErrorCode::MissingField,
                std::string(to_string(id)) + " needs bundle field '" + name + "'");
  return *field;
}

}  // namespace detail

inline FormulaValue evaluate(FormulaId id, const FormulaInput& input, const FormulaOptions& opts = {}) {
  using std::cbrt;
  using std::cos;
  using std::log;
  using std::sin;
  using std::sqrt;
  constexpr double pi = std::numbers::pi;
  if (input.m < 1) throw Error(ErrorCode::BadConfig, "m must be >= 1");

  const auto& b = input.bundle;
  const double m = static_cast<double>(input.m);
  FormulaValue out;
  const auto bounds = formula_bounds(id);
  out.bound_low = bounds.low;
  out.bound_high = bounds.high;

  auto efi = [&] { return detail::require(b.global_efficiency, "global_efficiency", id); };
  auto trans = [&] { return detail::require(b.transitivity, "transitivity", id); };
  auto clus = [&] { return detail::require(b.clustering, "clustering", id); };
  auto mod = [&] { return detail::require(b.modularity, "modularity", id); };
  auto core = [&] { return detail::require(b.core_ratio, "core_ratio", id); };
  auto exc = [&] { return detail::require(b.avg_eccentricity, "avg_eccentricity", id); };
  auto cpd = [&] { return detail::require(b.central_point_dominance, "central_point_dominance", id); };
  auto rcc = [&] { return detail::require(b.rich_club, "rich_club", id); };
  auto avg = [&] {
    const double a = detail::require(b.avg_collaborations, "avg_collaborations", id);
    if (a > m)
      out.warnings.push_back("avg_collaborations " + std::to_string(a) + " exceeds m " +
                             std::to_string(input.m));
    return a;
  };
  auto log_share = [&] { return log(1.0 + avg() / m); };
  auto sqrt_share = [&] { return sqrt(avg() / m); };
  auto robustness = [&] { return sqrt(trans() * (1.0 - cpd())); };

  switch (id) {
    case FormulaId::C0: {
      const double a = avg();
      const double c = clus();
      double q = mod();
      if (std::abs(q) < kLogEpsilon) {
        if (!opts.guard_log_domain)
          throw Error(ErrorCode::DomainError, "C0: log10(mod^2) is undefined at mod = 0");
        out.warnings.push_back("DomainError: |mod| < 1e-6 clamped to 1e-6 in log10(mod^2)");
        q = kLogEpsilon;
      }
      out.value = a * (c - std::log10(q * q));
      break;
    }
    case FormulaId::C1:
      out.value = efi() + trans() + (1.0 - (mod() + core()) / 2.0);
      break;
    case FormulaId::C2:
      out.value = efi() + trans() + 1.0 / exc() - mod();
      break;
    case FormulaId::C3:
      out.value = cbrt(efi() * clus() * 0.5 * (1.0 + cos(pi * mod())));
      break;
    case FormulaId::C4:
      out.value = cbrt(efi() * trans() * 0.5 * (1.0 + cos(pi * mod())));
      break;
    case FormulaId::C5:
      out.value = efi() + trans() + (1.0 - core());
      break;
    case FormulaId::C6:
      out.value = cbrt(efi() * trans() * sin(pi / exc()));
      break;
    case FormulaId::C7:
      out.value = 0.5 * (log_share() + (efi() + trans() + 1.0 / exc()) / 3.0);
      break;
    case FormulaId::C8:
      out.value = 0.5 * (log_share() + (efi() + trans() + 0.5 * cos(pi * mod())) / 3.0);
      break;
    case FormulaId::C9:
      out.value = 0.25 * (log_share() + efi() + trans() + 1.0 / exc());
      break;
    case FormulaId::C10:
    case FormulaId::C10R:
      out.value = 0.5 * (log_share() + cbrt(efi() * trans() * sin(pi / exc())));
      break;
    case FormulaId::C11:
      out.value = 0.25 * (sqrt_share() + efi() + trans() + rcc() * core() / exc());
      break;
    case FormulaId::C12:
      out.value = 0.25 * (log_share() + efi() + robustness() + 1.0 / exc());
      break;
    case FormulaId::C13:
      out.value = 0.25 * (sqrt_share() + efi() + robustness() + 1.0 / exc());
      break;
    case FormulaId::C14:
      out.value = 0.25 * (sqrt_share() + sqrt(efi() / exc()) + robustness() + rcc() * core());
      break;
  }
  if (id == FormulaId::C10R) {
    // avg > m can push C10 past its bound; rescale linearly anyway and say so.
    if (out.value > kC10Max) out.warnings.push_back("C10 above its theoretical bound; rescaled linearly");
    out.value = 1.0 + 10.0 * out.value;
  }
  return out;
}

struct FormulaOutcome {
  std::optional<FormulaValue> value;
  std::optional<Error> error;
};

// Evaluates every formula; a failure is recorded against its id only.
inline std::map<FormulaId, FormulaOutcome> evaluate_all(const FormulaInput& input,
                                                        const FormulaOptions& opts = {}) {
  std::map<FormulaId, FormulaOutcome> out;
  for (auto id : kAllFormulas) {
    try {
      out[id].value = evaluate(id, input, opts);
    } catch (const Error& e) {
      out[id].error = e;
    }
  }
  return out;
}

}  // namespace ecoidx
