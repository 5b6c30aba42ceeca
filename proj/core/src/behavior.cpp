#include "ctxrt/behavior.hpp"

#include <algorithm>

#include "ctxrt/error.hpp"
#include "ctxrt/lp.hpp"

namespace ctxrt {

namespace {

std::vector<std::size_t> decode(std::size_t index, std::size_t digits, std::size_t radix) {
  std::vector<std::size_t> out(digits);
  for (std::size_t d = digits; d-- > 0;) {
    out[d] = index % radix;
    index /= radix;
  }
  return out;
}

std::size_t encode(const std::vector<std::size_t>& digits, std::size_t radix) {
  std::size_t index = 0;
  for (std::size_t d : digits) index = index * radix + d;
  return index;
}

bool is_dichotomic(const Scenario& s) { return s.outcomes() == std::vector<std::string>{"+1", "-1"}; }

void require_dichotomic(const Scenario& s) {
  if (!is_dichotomic(s)) throw InputError("correlators need the dichotomic alphabet {\"+1\",\"-1\"}");
}

int sign_of(std::size_t outcome_index) { return outcome_index == 0 ? 1 : -1; }

}  // namespace

Behavior::Behavior(std::shared_ptr<const Scenario> scenario, std::vector<RationalVector> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
  if (!scenario_) throw InputError("behavior needs a scenario");
  if (tables_.size() != scenario_->context_count()) {
    throw InputError("behavior has " + std::to_string(tables_.size()) + " tables for " +
                     std::to_string(scenario_->context_count()) + " contexts");
  }
  for (std::size_t c = 0; c < tables_.size(); ++c) {
    if (tables_[c].size() != scenario_->table_size(c)) {
      throw InputError("table for context " + std::to_string(c) + " has wrong size");
    }
  }
}

Behavior::Behavior(const Scenario& scenario, std::vector<RationalVector> tables)
    : Behavior(std::make_shared<const Scenario>(scenario), std::move(tables)) {}

const Rational& Behavior::probability(std::size_t c, const std::vector<std::size_t>& outcome_indices) const {
  if (outcome_indices.size() != scenario_->contexts().at(c).size()) throw InputError("outcome length mismatch");
  return tables_[c][encode(outcome_indices, scenario_->outcome_count())];
}

bool Behavior::operator==(const Behavior& other) const {
  if (scenario_ != other.scenario_ && !(*scenario_ == *other.scenario_)) return false;
  return tables_ == other.tables_;
}

ValidationReport validate(const Behavior& b) {
  for (std::size_t c = 0; c < b.tables().size(); ++c) {
    Rational sum(0);
    for (const auto& p : b.table(c)) {
      if (sgn(p) < 0 || p > 1) {
        return {false, c, "context " + std::to_string(c) + " has an entry outside [0,1]: " + format_rational(p)};
      }
      sum += p;
    }
    if (sum != 1) {
      return {false, c, "context " + std::to_string(c) + " sums to " + format_rational(sum)};
    }
  }
  return {};
}

RationalVector marginal(const Behavior& b, std::size_t c, const std::vector<std::size_t>& ms) {
  const Scenario& s = b.scenario();
  const auto& ctx = s.contexts().at(c);
  std::vector<std::size_t> positions;
  for (std::size_t m : ms) {
    auto it = std::find(ctx.begin(), ctx.end(), m);
    if (it == ctx.end()) throw InputError("measurement " + std::to_string(m) + " not in context " + std::to_string(c));
    positions.push_back(static_cast<std::size_t>(it - ctx.begin()));
  }
  const std::size_t radix = s.outcome_count();
  std::size_t out_size = 1;
  for (std::size_t i = 0; i < ms.size(); ++i) out_size *= radix;
  RationalVector out(out_size, Rational(0));
  const auto& table = b.table(c);
  std::vector<std::size_t> sub(ms.size());
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    if (sgn(table[idx]) == 0) continue;
    auto digits = decode(idx, ctx.size(), radix);
    for (std::size_t i = 0; i < positions.size(); ++i) sub[i] = digits[positions[i]];
    out[encode(sub, radix)] += table[idx];
  }
  return out;
}

DisturbanceReport is_nondisturbing(const Behavior& b) {
  const Scenario& s = b.scenario();
  for (std::size_t c1 = 0; c1 < s.context_count(); ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < s.context_count(); ++c2) {
      std::vector<std::size_t> overlap;
      for (std::size_t m : s.contexts()[c1]) {
        const auto& other = s.contexts()[c2];
        if (std::find(other.begin(), other.end(), m) != other.end()) overlap.push_back(m);
      }
      if (overlap.empty()) continue;
      std::sort(overlap.begin(), overlap.end());
      if (marginal(b, c1, overlap) != marginal(b, c2, overlap)) {
        DisturbanceReport r;
        r.nondisturbing = false;
        r.contexts = std::make_pair(c1, c2);
        r.overlap = overlap;
        return r;
      }
    }
  }
  return {};
}

NoncontextualityResult is_noncontextual(const Behavior& b, std::size_t cap) {
  const Scenario& s = b.scenario();
  if (auto v = validate(b); !v.ok) throw InputError("invalid behavior: " + v.message);
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError("noncontextuality test needs a non-disturbing behavior");

  const std::size_t radix = s.outcome_count();
  const std::size_t m = s.measurement_count();
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (assignments > cap / radix) throw CapacityError("global assignment count exceeds cap");
    assignments *= radix;
  }

  lp::LinearProgram program(assignments);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto& ctx = s.contexts()[c];
    std::vector<RationalVector> rows(s.table_size(c), RationalVector(assignments, Rational(0)));
    std::vector<std::size_t> sub(ctx.size());
    for (std::size_t a = 0; a < assignments; ++a) {
      auto lambda = decode(a, m, radix);
      for (std::size_t i = 0; i < ctx.size(); ++i) sub[i] = lambda[ctx[i]];
      rows[encode(sub, radix)][a] = 1;
    }
    for (std::size_t e = 0; e < rows.size(); ++e) program.add_eq(std::move(rows[e]), b.table(c)[e]);
  }
  program.add_eq(RationalVector(assignments, Rational(1)), Rational(1));

  auto outcome = lp::solve(program);
  NoncontextualityResult result;
  if (!outcome.has_solution()) return result;
  result.noncontextual = true;
  GlobalSection section;
  for (std::size_t a = 0; a < assignments; ++a) {
    if (sgn(outcome.solution[a]) != 0) section.weights[decode(a, m, radix)] = outcome.solution[a];
  }
  result.section = std::move(section);
  return result;
}

Behavior behavior_from_section(const Scenario& s, const GlobalSection& section) {
  const std::size_t radix = s.outcome_count();
  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < s.context_count(); ++c) tables.emplace_back(s.table_size(c), Rational(0));
  for (const auto& [lambda, w] : section.weights) {
    if (lambda.size() != s.measurement_count()) throw InputError("global assignment has wrong length");
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      std::vector<std::size_t> sub;
      for (std::size_t m : s.contexts()[c]) sub.push_back(lambda[m]);
      tables[c][encode(sub, radix)] += w;
    }
  }
  return Behavior(s, std::move(tables));
}

Behavior mix(const Behavior& b1, const Behavior& b2, const Rational& w) {
  if (!(b1.scenario() == b2.scenario())) throw InputError("cannot mix behaviors on different scenarios");
  if (sgn(w) < 0 || w > 1) throw InputError("mixing weight outside [0,1]");
  const Rational rest = 1 - w;
  std::vector<RationalVector> tables = b1.tables();
  for (std::size_t c = 0; c < tables.size(); ++c) {
    for (std::size_t e = 0; e < tables[c].size(); ++e) {
      Rational value = w * tables[c][e] + rest * b2.table(c)[e];
      tables[c][e] = std::move(value);
    }
  }
  return Behavior(b1.scenario_ptr(), std::move(tables));
}

Rational correlator(const Behavior& b, std::size_t i, std::size_t j) {
  const Scenario& s = b.scenario();
  require_dichotomic(s);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto& ctx = s.contexts()[c];
    if (std::find(ctx.begin(), ctx.end(), i) == ctx.end() || std::find(ctx.begin(), ctx.end(), j) == ctx.end()) continue;
    auto m = marginal(b, c, {i, j});
    Rational value(0);
    for (std::size_t idx = 0; idx < 4; ++idx) {
      int sign = sign_of(idx / 2) * sign_of(idx % 2);
      if (sign > 0) value += m[idx];
      else value -= m[idx];
    }
    return value;
  }
  throw InputError("no context contains measurements " + std::to_string(i) + " and " + std::to_string(j));
}

Rational single_marginal(const Behavior& b, std::size_t i) {
  const Scenario& s = b.scenario();
  require_dichotomic(s);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto& ctx = s.contexts()[c];
    if (std::find(ctx.begin(), ctx.end(), i) == ctx.end()) continue;
    auto m = marginal(b, c, {i});
    return m[0] - m[1];
  }
  throw InputError("measurement " + std::to_string(i) + " is in no context");
}

CorrelationVector to_correlations(const Behavior& b) {
  const int n = cycle_length(b.scenario());
  if (n == 0) throw InputError("correlation coordinates need an n-cycle behavior");
  CorrelationVector cv;
  for (int i = 0; i < n; ++i) {
    const auto& t = b.table(static_cast<std::size_t>(i));
    cv.marginals.push_back(t[0] + t[1] - t[2] - t[3]);
    cv.correlators.push_back(t[0] - t[1] - t[2] + t[3]);
  }
  return cv;
}

Behavior from_correlations(int n, const CorrelationVector& cv) {
  if (cv.marginals.size() != static_cast<std::size_t>(n) || cv.correlators.size() != static_cast<std::size_t>(n)) {
    throw InputError("correlation vector has wrong length");
  }
  auto scenario = std::make_shared<const Scenario>(make_cycle_scenario(n));
  std::vector<RationalVector> tables;
  for (int i = 0; i < n; ++i) {
    const Rational& mi = cv.marginals[static_cast<std::size_t>(i)];
    const Rational& mj = cv.marginals[static_cast<std::size_t>((i + 1) % n)];
    const Rational& c = cv.correlators[static_cast<std::size_t>(i)];
    RationalVector t(4);
    for (std::size_t idx = 0; idx < 4; ++idx) {
      int a = sign_of(idx / 2);
      int bb = sign_of(idx % 2);
      t[idx] = (1 + a * mi + bb * mj + a * bb * c) / 4;
    }
    tables.push_back(std::move(t));
  }
  return Behavior(scenario, std::move(tables));
}

std::string outcome_string(const Scenario& s, std::size_t c, std::size_t index) {
  auto digits = decode(index, s.contexts().at(c).size(), s.outcome_count());
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += s.outcomes()[digits[i]];
  }
  return out;
}

nlohmann::json to_json(const Behavior& b) {
  const Scenario& s = b.scenario();
  nlohmann::json tables = nlohmann::json::object();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    nlohmann::json table = nlohmann::json::object();
    for (std::size_t e = 0; e < b.table(c).size(); ++e) table[outcome_string(s, c, e)] = format_rational(b.table(c)[e]);
    tables[std::to_string(c)] = std::move(table);
  }
  return {{"scenario", to_json(s)}, {"tables", std::move(tables)}};
}

Behavior behavior_from_json(const nlohmann::json& j,
                            const std::function<nlohmann::json(const std::string&)>& resolve_path) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("tables")) {
    throw InputError("behavior JSON needs 'scenario' and 'tables'");
  }
  const auto& sj = j.at("scenario");
  std::shared_ptr<const Scenario> scenario;
  if (sj.is_string()) {
    if (!resolve_path) throw InputError("scenario given as a path but no resolver available");
    scenario = std::make_shared<const Scenario>(scenario_from_json(resolve_path(sj.get<std::string>())));
  } else {
    scenario = std::make_shared<const Scenario>(scenario_from_json(sj));
  }
  const Scenario& s = *scenario;
  const auto& tj = j.at("tables");
  if (!tj.is_object()) throw InputError("'tables' must be an object");

  std::map<std::string, std::size_t> label_index;
  for (std::size_t o = 0; o < s.outcome_count(); ++o) label_index[s.outcomes()[o]] = o;

  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < s.context_count(); ++c) tables.emplace_back(s.table_size(c), Rational(0));
  std::vector<bool> seen(s.context_count(), false);

  for (const auto& [key, table] : tj.items()) {
    std::size_t c = 0;
    try {
      std::size_t used = 0;
      c = std::stoul(key, &used);
      if (used != key.size()) throw InputError("");
    } catch (...) {
      throw InputError("table key '" + key + "' is not a context index");
    }
    if (c >= s.context_count()) throw InputError("table key '" + key + "' is out of range");
    if (!table.is_object()) throw InputError("table " + key + " must be an object");
    seen[c] = true;
    const std::size_t arity = s.contexts()[c].size();
    for (const auto& [outcome, value] : table.items()) {
      std::vector<std::size_t> digits;
      std::size_t start = 0;
      for (;;) {
        auto comma = outcome.find(',', start);
        std::string label = outcome.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto it = label_index.find(label);
        if (it == label_index.end()) throw InputError("unknown outcome label '" + label + "' in table " + key);
        digits.push_back(it->second);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (digits.size() != arity) throw InputError("outcome string '" + outcome + "' has wrong length for context " + key);
      Rational p;
      if (value.is_string()) p = parse_rational(value.get<std::string>());
      else if (value.is_number_integer()) p = Rational(value.get<long>());
      else throw InputError("probabilities must be strings ('p/q' or decimal) or integers");
      tables[c][encode(digits, s.outcome_count())] = p;
    }
  }
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (!seen[c]) throw InputError("missing table for context " + std::to_string(c));
  }
  return Behavior(scenario, std::move(tables));
}

nlohmann::json to_json(const GlobalSection& g, const Scenario& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [lambda, w] : g.weights) {
    std::vector<std::string> labels;
    for (std::size_t o : lambda) labels.push_back(s.outcomes()[o]);
    out.push_back({{"assignment", labels}, {"weight", format_rational(w)}});
  }
  return out;
}

}  // namespace ctxrt
