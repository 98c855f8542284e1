#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hotelling/dynamics.hpp"

namespace hotelling::io {

using nlohmann::json;

inline constexpr std::string_view kVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

struct ParsedNumber {
  Rational exact;
  bool decimal = false;  // written with a point or exponent
};

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

inline BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

inline BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Accepts "p", "p/q" and decimal notation ("0.25", "-1.5e-3"). Decimals are
/// converted to the exact fraction they spell.
inline ParsedNumber parse_number(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = detail::parse_integer(s.substr(0, slash));
    const auto den_text = s.substr(slash + 1);
    if (!detail::all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
    const BigInt den(std::string{den_text});
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return {Rational(num, den), false};
  }

  if (s.find_first_of(".eE") == std::string_view::npos) return {Rational(detail::parse_integer(s)), false};

  long exponent = 0;
  std::string_view mantissa = s;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    const auto exp_text = s.substr(e + 1);
    const BigInt ev = detail::parse_integer(exp_text);
    if (ev > 400 || ev < -400) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exponent = ev.convert_to<long>();
  }
  bool neg = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    neg = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const auto whole = mantissa.substr(0, dot);
    const auto frac = mantissa.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    digits = std::string(whole) + std::string(frac);
    frac_digits = static_cast<long>(frac.size());
  } else {
    if (!detail::all_digits(mantissa)) throw ParseError("malformed decimal '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  BigInt num(digits);
  if (neg) num = -num;
  const long shift = exponent - frac_digits;
  Rational value = shift >= 0 ? Rational(num * detail::pow10(shift)) : Rational(num, detail::pow10(-shift));
  return {value, true};
}

inline ParsedNumber parse_number(const char* text) { return parse_number(std::string_view(text)); }

inline ParsedNumber parse_number(const json& j) {
  if (j.is_string()) return parse_number(std::string_view(j.get_ref<const std::string&>()));
  if (j.is_number_integer()) return {Rational(j.get<std::int64_t>()), false};
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw ParseError("non-finite position");
    return {Rational(d), true};
  }
  throw ParseError("position must be a number or a fraction string");
}

inline json scalar_json(const Rational& x) { return to_string(x); }
inline json scalar_json(double x) { return x; }

template <Scalar T>
json positions_json(const LocationProfile<T>& p) {
  json arr = json::array();
  for (const auto& x : p.positions()) arr.push_back(scalar_json(x.value()));
  return arr;
}

template <Scalar T>
json scalars_json(const std::vector<T>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(scalar_json(x));
  return arr;
}

template <Scalar T>
std::string scalar_text(const T& x) {
  if constexpr (is_exact_v<T>) {
    return to_string(x);
  } else {
    return json(x).dump();
  }
}

// ---------------------------------------------------------------------------
// Profile documents
// ---------------------------------------------------------------------------

using AnyProfile = std::variant<LocationProfile<Rational>, LocationProfile<double>>;

enum class ModeRequest { unspecified, exact, floating };

inline ModeRequest parse_mode(std::string_view s) {
  if (s.empty()) return ModeRequest::unspecified;
  if (s == "exact") return ModeRequest::exact;
  if (s == "float") return ModeRequest::floating;
  throw ParseError("mode must be 'exact' or 'float', got '" + std::string(s) + "'");
}

inline std::string_view mode_name(const NumericMode& mode) { return mode.is_exact() ? "exact" : "float"; }

struct ProfileInput {
  AnyProfile profile;
  std::vector<std::string> raw;
  bool decimal_fallback = false;  // decimals switched an unspecified mode to float
};

/// Builds a profile from textual positions. Without an explicit mode, any
/// decimal input selects floating mode.
inline ProfileInput build_profile(const std::vector<json>& tokens, ModeRequest mode) {
  if (tokens.size() < 2) throw ParseError("a profile needs at least two positions");
  std::vector<ParsedNumber> nums;
  std::vector<std::string> raw;
  bool any_decimal = false;
  for (const auto& t : tokens) {
    nums.push_back(parse_number(t));
    raw.push_back(t.is_string() ? t.get<std::string>() : t.dump());
    any_decimal = any_decimal || nums.back().decimal;
  }
  const bool use_float = mode == ModeRequest::floating || (mode == ModeRequest::unspecified && any_decimal);
  if (use_float) {
    std::vector<double> xs;
    for (const auto& v : nums) xs.push_back(v.exact.convert_to<double>());
    return {LocationProfile<double>::from_values(xs), raw, mode == ModeRequest::unspecified};
  }
  std::vector<Rational> xs;
  for (const auto& v : nums) xs.push_back(v.exact);
  return {LocationProfile<Rational>::from_values(xs), raw, false};
}

/// Comma- or whitespace-separated list, e.g. "0, 1/2, 1/2".
inline ProfileInput parse_position_list(std::string_view text, ModeRequest mode) {
  std::vector<json> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.emplace_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return build_profile(tokens, mode);
}

/// {"n": 3, "positions": ["0", "1/2", "1/2"], "mode": "exact"}; "n" and
/// "mode" are optional. A mode in the document wins over `fallback`.
inline ProfileInput parse_profile_document(const json& doc, ModeRequest fallback) {
  if (!doc.is_object()) throw ParseError("profile document must be a JSON object");
  if (!doc.contains("positions") || !doc["positions"].is_array())
    throw ParseError("profile document needs a 'positions' array");
  std::vector<json> tokens(doc["positions"].begin(), doc["positions"].end());
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(tokens.size()))
      throw ParseError("'n' does not match the number of positions");
  }
  ModeRequest mode = fallback;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ParseError("'mode' must be a string");
    mode = parse_mode(doc["mode"].get<std::string>());
  }
  return build_profile(tokens, mode);
}

template <Scalar T>
json profile_document(const LocationProfile<T>& p) {
  return json{{"n", p.size()}, {"positions", positions_json(p)}, {"mode", mode_name(p.mode())}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

template <Scalar T>
json condition_json(const ConditionReport<T>& c) {
  json per = json::array();
  for (const auto& g : c.per_k) {
    per.push_back({{"k", g.k + 1},
                   {"gap", scalar_json(g.gap)},
                   {"next_gap", scalar_json(g.next_gap)},
                   {"sum", scalar_json(g.sum)},
                   {"satisfied", g.satisfied}});
  }
  return json{{"max_gap", scalar_json(c.max_gap)}, {"per_k", per}, {"holds", c.holds}};
}

template <Scalar T>
json best_response_json(const BestResponseResult<T>& br) {
  json j{{"vendor", br.vendor + 1},
         {"current_profit", scalar_json(br.current_profit)},
         {"best_value", scalar_json(br.best_value)},
         {"best_class", std::string(to_string(br.best_class))},
         {"improving", br.improving}};
  if (br.best_class == DeviationKind::stay) {
    j["class_index"] = nullptr;
  } else {
    j["class_index"] = br.class_index + 1;
  }
  j["witness"] = scalar_json(br.witness.value());
  return j;
}

struct Analysis {
  json report;
  bool condition = false;
  bool oracle = false;
  bool agreement() const { return condition == oracle; }
};

/// Full analysis of one profile: gaps, profits, gap condition, every
/// vendor's best response and the two verdicts.
template <Scalar T>
Analysis analyze(const LocationProfile<T>& p, std::string_view command, const std::vector<std::string>& raw) {
  const auto gaps = gap_vector(p);
  const auto profits = profit_closed_form(p);
  const auto cond = gap_condition(p);
  const auto verdict = equilibrium_oracle(p);

  json brs = json::array();
  for (const auto& br : verdict.responses) brs.push_back(best_response_json(br));

  Analysis a;
  a.condition = cond.holds;
  a.oracle = verdict.equilibrium;
  a.report = json{
      {"command", std::string(command)},
      {"input", {{"raw", raw}, {"profile", profile_document(p)}, {"canonical", profile_document(canonicalize(p).profile())}}},
      {"gaps", scalars_json(gaps.values())},
      {"profits", scalars_json(profits.values())},
      {"condition", condition_json(cond)},
      {"best_responses", brs},
      {"verdicts", {{"condition", a.condition}, {"oracle", a.oracle}, {"agreement", a.agreement()}}},
      {"metadata", {{"seed", nullptr}, {"mode", mode_name(p.mode())}, {"version", std::string(kVersion)}}},
  };
  return a;
}

template <Scalar T>
json move_json(const MoveRecord<T>& m) {
  return json{{"step", m.step},
              {"mover", m.mover + 1},
              {"from", scalar_json(m.from.value())},
              {"to", scalar_json(m.to.value())},
              {"profit_before", scalar_json(m.profit_before)},
              {"profit_after", scalar_json(m.profit_after)}};
}

inline json outcome_json(const DynamicsOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> json {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Converged>) {
          return {{"kind", "converged"}, {"moves", o.moves}, {"steps", o.steps}};
        } else if constexpr (std::is_same_v<O, Cycle>) {
          return {{"kind", "cycle"}, {"period", o.period}, {"first_visit", o.first_visit}};
        } else {
          return {{"kind", "budget-exhausted"}};
        }
      },
      outcome);
}

inline std::string_view schedule_name(const Schedule& s) {
  return s.kind == ScheduleKind::round_robin ? "round-robin" : "random";
}

}  // namespace hotelling::io
