#pragma once

// Command-line front end. `run_cli` parses arguments, runs one subcommand and
// writes its result to `out` (diagnostics to `err`), returning the exit code:
// 0 pass, 1 check failure, 2 usage error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "commcyc/bernoulli.hpp"
#include "commcyc/genfun.hpp"
#include "commcyc/json_io.hpp"
#include "commcyc/oracle.hpp"
#include "commcyc/permutation.hpp"
#include "commcyc/rmt.hpp"
#include "commcyc/verify.hpp"

namespace commcyc::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_check_failure = 1;
inline constexpr int exit_usage = 2;

/// Raised for inputs the command cannot serve; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Selectors

enum class TauKind { family, type, explicit_permutation };

/// "one-cycle:M", "two-cycles:M", "transpositions:M", "uniform:M",
/// "alternating:M", "odd:M", "type:[c1,c2,...]" or cycle notation.
struct TauSpec {
  std::string text;
  TauKind kind = TauKind::family;
  PgfSource family = PgfSource::one_cycle;
  std::uint32_t m = 0;
  std::optional<CycleType> type;
  std::optional<Permutation> permutation;

  /// True for the uniform, alternating and odd laws of sigma itself.
  bool is_plain_law() const {
    return kind == TauKind::family &&
           (family == PgfSource::uniform || family == PgfSource::alternating || family == PgfSource::co_alternating);
  }

  std::uint32_t ground_size() const {
    if (kind == TauKind::explicit_permutation) return static_cast<std::uint32_t>(permutation->size());
    if (kind == TauKind::type) return type->size();
    if (family == PgfSource::two_cycles || family == PgfSource::transpositions) return 2 * m;
    return m;
  }

  /// Cycle type of tau; empty for the plain laws.
  std::optional<CycleType> cycle_type_of_tau() const {
    switch (kind) {
      case TauKind::type:
        return type;
      case TauKind::explicit_permutation:
        return cycle_type(*permutation);
      case TauKind::family:
        break;
    }
    if (family == PgfSource::one_cycle) return CycleType({m});
    if (family == PgfSource::two_cycles) return CycleType({m, m});
    if (family == PgfSource::transpositions) return CycleType(std::vector<std::uint32_t>(m, 2));
    return std::nullopt;
  }

  Permutation tau() const {
    if (kind == TauKind::explicit_permutation) return *permutation;
    if (auto t = cycle_type_of_tau()) return canonical_tau(*t);
    return Permutation::identity(m);
  }
};

inline std::uint32_t parse_positive(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError(what + ": expected a positive integer, got '" + s + "'");
  unsigned long long v = 0;
  try {
    v = std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(what + ": integer out of range '" + s + "'");
  }
  if (v == 0 || v > 100000) throw UsageError(what + ": expected a positive integer, got '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

inline CycleType parse_cycle_type(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw UsageError("type selector expects '[c1,c2,...]', got '" + std::string(text) + "'");
  std::vector<std::uint32_t> parts;
  if (s[s.size() - 2] == ',') throw UsageError("type selector has an empty cycle length");
  std::stringstream body(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) parts.push_back(parse_positive(item, "cycle length"));
  if (parts.empty()) throw UsageError("type selector needs at least one cycle length");
  return CycleType(parts);
}

inline TauSpec parse_tau_spec(const std::string& text, std::optional<std::size_t> size = std::nullopt) {
  TauSpec spec;
  spec.text = text;
  auto colon = text.find(':');
  if (!text.empty() && text.front() == '(') {
    spec.kind = TauKind::explicit_permutation;
    try {
      spec.permutation = parse_cycles(text, size);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("invalid cycle notation: ") + e.what());
    }
    if (spec.permutation->size() == 0) throw UsageError("cycle notation '()' needs --size");
    return spec;
  }
  if (colon == std::string::npos) throw UsageError("unrecognized selector '" + text + "'");
  std::string head = text.substr(0, colon);
  std::string tail = text.substr(colon + 1);
  if (head == "type") {
    spec.kind = TauKind::type;
    spec.type = parse_cycle_type(tail);
    return spec;
  }
  spec.kind = TauKind::family;
  if (head == "one-cycle")
    spec.family = PgfSource::one_cycle;
  else if (head == "two-cycles")
    spec.family = PgfSource::two_cycles;
  else if (head == "transpositions")
    spec.family = PgfSource::transpositions;
  else if (head == "uniform")
    spec.family = PgfSource::uniform;
  else if (head == "alternating")
    spec.family = PgfSource::alternating;
  else if (head == "odd")
    spec.family = PgfSource::co_alternating;
  else
    throw UsageError("unrecognized selector family '" + head + "'");
  spec.m = parse_positive(tail, head);
  if (spec.family == PgfSource::co_alternating && spec.m < 2) throw UsageError("odd:M needs M >= 2");
  return spec;
}

// ---------------------------------------------------------------------------
// Exact law resolution

struct ResolvedLaw {
  std::optional<CyclePGF> pgf;
  std::string provenance;
  std::string warning;
};

inline std::string closed_form_provenance(PgfSource s) {
  switch (s) {
    case PgfSource::uniform:
      return "closed-form: uniform permutation";
    case PgfSource::alternating:
      return "closed-form: alternating group";
    case PgfSource::co_alternating:
      return "closed-form: odd permutations";
    case PgfSource::one_cycle:
      return "closed-form: one cycle";
    case PgfSource::two_cycles:
      return "closed-form: two cycles";
    case PgfSource::transpositions:
      return "closed-form: transpositions";
    default:
      return "oracle enumeration";
  }
}

inline CyclePGF closed_form(PgfSource s, std::uint32_t m) {
  switch (s) {
    case PgfSource::uniform:
      return uniform_cycles_pgf(m);
    case PgfSource::alternating:
      return alternating_pgf(m, false);
    case PgfSource::co_alternating:
      return alternating_pgf(m, true);
    case PgfSource::one_cycle:
      return one_cycle_pgf(m);
    case PgfSource::two_cycles:
      return two_cycles_pgf(m);
    default:
      return transpositions_pgf(m);
  }
}

/// Closed form when one applies, otherwise the oracle within the cap,
/// otherwise no exact law.
inline ResolvedLaw resolve_law(const TauSpec& spec, const EnumerationOptions& opt) {
  ResolvedLaw r;
  if (spec.kind == TauKind::family) {
    r.pgf = closed_form(spec.family, spec.m);
    r.provenance = closed_form_provenance(spec.family);
    return r;
  }
  const CycleType type = *spec.cycle_type_of_tau();
  const std::uint32_t n = spec.ground_size();
  const auto& parts = type.parts();
  const bool equal_parts =
      std::all_of(parts.begin(), parts.end(), [&](std::uint32_t c) { return c == parts.front(); });
  if (equal_parts && parts.front() > 1) {
    const std::uint32_t m = parts.front();
    const auto k = static_cast<std::uint32_t>(parts.size());
    if (k == 1) {
      r.pgf = one_cycle_pgf(m);
      r.provenance = closed_form_provenance(PgfSource::one_cycle);
      return r;
    }
    if (m == 2) {
      r.pgf = transpositions_pgf(k);
      r.provenance = closed_form_provenance(PgfSource::transpositions);
      return r;
    }
    if (k == 2) {
      r.pgf = two_cycles_pgf(m);
      r.provenance = closed_form_provenance(PgfSource::two_cycles);
      return r;
    }
  }
  if (n <= opt.cap) {
    auto d = exact_commutator_distribution(spec.tau(), opt);
    r.pgf = distribution_to_pgf(d, PgfSource::oracle, n);
    r.provenance = "oracle enumeration";
    r.warning = "no closed form for cycle type " + type.to_string() + "; using oracle enumeration of S_" +
                std::to_string(n);
    return r;
  }
  r.provenance = "no exact reference above cap";
  return r;
}

// ---------------------------------------------------------------------------
// Rendering helpers

/// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\n";
}

inline std::string render_table(const std::vector<std::string>& headers,
                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t c = 0; c < width.size(); ++c) {
      std::string cell = c < cells.size() ? cells[c] : "";
      text += (c ? "  " : "") + cell + std::string(width[c] - cell.size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    os << text << "\n";
  };
  line(headers);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : rows) line(row);
  return os.str();
}

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Global settings

enum class Format { json, human, csv };

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::uint64_t samples = 100000;
  std::uint32_t max_m = 6;
  std::uint32_t cap = default_enumeration_cap;
  unsigned threads = 0;
  std::string format;

  Format format_or(Format fallback) const {
    if (format.empty()) return fallback;
    if (format == "human") return Format::human;
    if (format == "csv") return Format::csv;
    return Format::json;
  }

  EnumerationOptions enumeration() const { return EnumerationOptions{cap, threads}; }
};

inline void reject_format(Format f, std::initializer_list<Format> allowed, const char* command) {
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw UsageError(std::string(command) + ": unsupported --format for this command");
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_pgf(const GlobalOptions& g, const TauSpec& spec, std::ostream& out, std::ostream& err) {
  Format f = g.format_or(Format::json);
  reject_format(f, {Format::json, Format::human}, "pgf");
  auto law = resolve_law(spec, g.enumeration());
  if (!law.pgf)
    throw UsageError("no closed form for " + spec.text + " and M = " + std::to_string(spec.ground_size()) +
                     " exceeds the enumeration cap " + std::to_string(g.cap) +
                     "; use `commcyc mc` for a Monte-Carlo estimate");
  if (!law.warning.empty()) err << "warning: " << law.warning << "\n";
  const CyclePGF& pgf = *law.pgf;
  if (f == Format::json) {
    json j = to_json(pgf);
    j["tau"] = spec.text;
    j["provenance"] = law.provenance;
    j["polynomial"] = pgf.poly.to_string();
    out << j.dump() << "\n";
  } else {
    out << "tau:        " << spec.text << "\n"
        << "provenance: " << law.provenance << "\n"
        << "PGF:        " << pgf.poly.to_string() << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (long k = 0; k <= pgf.poly.degree(); ++k) {
      Rational p = pgf.poly.coeff(static_cast<std::size_t>(k));
      if (p != 0) rows.push_back({std::to_string(k), rational_to_string(p), format_double(p.get_d())});
    }
    out << render_table({"cycles", "probability", "approx"}, rows);
  }
  return exit_pass;
}

inline int cmd_dist(const GlobalOptions& g, const TauSpec& spec, std::ostream& out, std::ostream& err) {
  Format f = g.format_or(Format::csv);
  auto law = resolve_law(spec, g.enumeration());
  if (!law.pgf)
    throw UsageError("no exact distribution for " + spec.text + " above the enumeration cap " +
                     std::to_string(g.cap) + "; use `commcyc sample` or `commcyc mc`");
  if (!law.warning.empty()) err << "warning: " << law.warning << "\n";
  CycleDistribution d = pgf_to_distribution(*law.pgf);
  if (f == Format::csv) {
    out << csv_header_distribution() << distribution_csv_rows(d);
  } else if (f == Format::json) {
    json probs = json::array();
    for (std::size_t k = 0; k < d.probs.size(); ++k)
      if (d.probs[k] != 0) probs.push_back({{"cycle_count", k}, {"probability", rational_to_string(d.probs[k])}});
    out << json{{"tau", spec.text}, {"M", d.ground_size}, {"provenance", law.provenance}, {"distribution", probs}}
               .dump()
        << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < d.probs.size(); ++k)
      if (d.probs[k] != 0)
        rows.push_back({std::to_string(k), rational_to_string(d.probs[k]), format_double(d.probs[k].get_d())});
    out << "tau: " << spec.text << " (" << law.provenance << ")\n" << render_table({"cycles", "probability", "approx"}, rows);
  }
  return exit_pass;
}

inline int cmd_bernoulli(const GlobalOptions& g, const TauSpec& spec, std::ostream& out, std::ostream&) {
  Format f = g.format_or(Format::json);
  reject_format(f, {Format::json, Format::human}, "bernoulli");
  if (spec.kind != TauKind::family ||
      !(spec.family == PgfSource::uniform || spec.family == PgfSource::transpositions ||
        spec.family == PgfSource::one_cycle))
    throw UsageError("bernoulli: supported selectors are uniform:M, transpositions:M and one-cycle:M");
  CyclePGF pgf = closed_form(spec.family, spec.m);
  BernoulliDecomposition d = bernoulli_decomposition(pgf);
  double residual = reconstruction_residual(d, pgf);
  if (f == Format::json) {
    json j = to_json(d);
    for (auto& t : j["terms"]) t["provenance"] = t["exact"].get<bool>() ? "exact" : "root-found";
    json doc{{"tau", spec.text}, {"M", spec.m}, {"source", std::string(to_string(pgf.source))}};
    doc["offset"] = j["offset"];
    doc["terms"] = j["terms"];
    doc["reconstruction_residual"] = residual;
    if (d.roots) {
      doc["max_real_part"] = d.roots->max_real_part;
      doc["max_relative_residual"] = d.roots->max_relative_residual;
    }
    out << doc.dump() << "\n";
  } else {
    out << "tau: " << spec.text << "\noffset: " << d.offset << "\nreconstruction residual: " << format_double(residual)
        << "\n";
    if (d.roots) out << "max |Re root|: " << format_double(d.roots->max_real_part) << "\n";
    out << "\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
      const auto& t = d.terms[i];
      rows.push_back({std::to_string(i + 1), t.exact ? rational_to_string(*t.exact) : format_double(t.p),
                      std::to_string(t.multiplier), t.exact ? "exact" : "root-found"});
    }
    out << render_table({"term", "p", "multiplier", "provenance"}, rows);
  }
  return residual < 1e-10 ? exit_pass : exit_check_failure;
}

inline int cmd_hultman(const GlobalOptions& g, std::ostream& out, std::ostream&) {
  Format f = g.format_or(Format::csv);
  if (g.max_m > 12) throw UsageError("hultman: --max-m must be at most 12");
  struct Row {
    std::uint32_t m, k;
    Integer count;
    std::optional<Integer> oracle;
  };
  std::vector<Row> rows;
  bool ok = true;
  for (std::uint32_t m = 1; m <= g.max_m; ++m)
    for (std::uint32_t k = 1; k <= m; ++k) {
      Integer c = hultman_count(m, k, HultmanMethod::formula);
      if (c == 0) continue;
      Row r{m, k, c, std::nullopt};
      if (m <= g.cap) {
        r.oracle = hultman_count(m, k, HultmanMethod::enumeration, g.enumeration());
        ok = ok && *r.oracle == c;
      }
      rows.push_back(std::move(r));
    }
  if (f == Format::csv) {
    out << csv_row({"M", "k", "count", "oracle_count"});
    for (const auto& r : rows)
      out << csv_row({std::to_string(r.m), std::to_string(r.k), r.count.get_str(), r.oracle ? r.oracle->get_str() : ""});
  } else if (f == Format::json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"M", r.m}, {"k", r.k}, {"count", r.count.get_str()},
                     {"oracle_count", r.oracle ? json(r.oracle->get_str()) : json(nullptr)}});
    out << json{{"max_M", g.max_m}, {"rows", arr}, {"consistent", ok}}.dump() << "\n";
  } else {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows)
      table.push_back({std::to_string(r.m), std::to_string(r.k), r.count.get_str(), r.oracle ? r.oracle->get_str() : "-"});
    out << render_table({"M", "k", "count", "oracle"}, table);
  }
  return ok ? exit_pass : exit_check_failure;
}

struct ChiSquare {
  double statistic = 0;
  std::uint32_t dof = 0;
  double p_value = 1;
};

/// Pearson statistic with cells of expected count below 5 pooled together.
inline ChiSquare chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected_prob,
                            std::uint64_t draws) {
  ChiSquare cs;
  double pooled_obs = 0, pooled_exp = 0;
  std::uint32_t cells = 0;
  const std::size_t n = std::max(observed.size(), expected_prob.size());
  for (std::size_t k = 0; k < n; ++k) {
    double o = k < observed.size() ? static_cast<double>(observed[k]) : 0.0;
    double e = (k < expected_prob.size() ? expected_prob[k] : 0.0) * static_cast<double>(draws);
    if (e <= 0) {
      if (o > 0) cs.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    if (e < 5) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    cs.statistic += (o - e) * (o - e) / e;
    ++cells;
  }
  if (pooled_exp > 0) {
    cs.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  cs.dof = cells > 0 ? cells - 1 : 0;
  if (!std::isfinite(cs.statistic))
    cs.p_value = 0;
  else if (cs.dof == 0)
    cs.p_value = 1;
  else
    cs.p_value = boost::math::gamma_q(cs.dof / 2.0, cs.statistic / 2.0);
  return cs;
}

inline constexpr double sample_failure_p_value = 1e-6;

inline int cmd_sample(const GlobalOptions& g, const TauSpec& spec, std::uint64_t draws, std::ostream& out,
                      std::ostream&) {
  Format f = g.format_or(Format::json);
  reject_format(f, {Format::json, Format::human}, "sample");
  if (draws == 0) throw UsageError("sample: draws must be at least 1");
  const std::uint32_t n = spec.ground_size();
  const Permutation tau = spec.tau();
  std::vector<std::uint64_t> hist(n + 1, 0);
  Rng rng = make_stream(g.seed, 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    Permutation s = sample_uniform(n, rng);
    if (spec.is_plain_law()) {
      if (spec.family != PgfSource::uniform) {
        const Parity want = spec.family == PgfSource::alternating ? Parity::even : Parity::odd;
        while (sign_parity(s) != want) s = sample_uniform(n, rng);
      }
      ++hist[cycle_count(s)];
    } else {
      ++hist[cycle_count(commutator(s, tau))];
    }
  }
  auto law = resolve_law(spec, g.enumeration());
  std::optional<ChiSquare> cs;
  std::vector<double> expected;
  if (law.pgf) {
    for (std::uint32_t k = 0; k <= n; ++k) expected.push_back(law.pgf->poly.coeff(k).get_d());
    cs = chi_square(hist, expected, draws);
  }
  if (f == Format::json) {
    json rows = json::array();
    for (std::uint32_t k = 0; k <= n; ++k) {
      if (hist[k] == 0 && (expected.empty() || expected[k] == 0)) continue;
      json row{{"cycle_count", k}, {"observed", hist[k]},
               {"frequency", static_cast<double>(hist[k]) / static_cast<double>(draws)}};
      row["expected"] = expected.empty() ? json(nullptr) : json(expected[k]);
      rows.push_back(std::move(row));
    }
    json doc{{"tau", spec.text}, {"M", n}, {"draws", draws}, {"seed", g.seed}, {"histogram", rows}};
    doc["reference"] = law.provenance;
    if (cs)
      doc["chi_square"] = {{"statistic", finite_or_null(cs->statistic)}, {"dof", cs->dof}, {"p_value", cs->p_value}};
    else
      doc["chi_square"] = nullptr;
    out << doc.dump() << "\n";
  } else {
    out << "tau: " << spec.text << ", draws " << draws << ", seed " << g.seed << "\nreference: " << law.provenance
        << "\n";
    if (cs)
      out << "chi-square " << format_double(cs->statistic) << " on " << cs->dof << " dof, p-value "
          << format_double(cs->p_value) << "\n";
    out << "\n";
    std::vector<std::vector<std::string>> rows;
    for (std::uint32_t k = 0; k <= n; ++k) {
      if (hist[k] == 0 && (expected.empty() || expected[k] == 0)) continue;
      rows.push_back({std::to_string(k), std::to_string(hist[k]),
                      format_double(static_cast<double>(hist[k]) / static_cast<double>(draws)),
                      expected.empty() ? "-" : format_double(expected[k])});
    }
    out << render_table({"cycles", "observed", "frequency", "expected"}, rows);
  }
  return cs && cs->p_value < sample_failure_p_value ? exit_check_failure : exit_pass;
}

inline json check_to_json(const Check& c) {
  json j{{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
  if (c.report) j["report"] = to_json(*c.report);
  return j;
}

inline int cmd_verify(const GlobalOptions& g, const std::string& scope_text, std::optional<std::uint64_t> mutate,
                      double threshold, std::ostream& out, std::ostream&) {
  Format f = g.format_or(Format::json);
  reject_format(f, {Format::json, Format::human}, "verify");
  VerifyOptions opt;
  try {
    opt.scope = parse_verify_scope(scope_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  opt.max_ground = g.max_m;
  opt.enumeration = g.enumeration();
  opt.rmt.samples = g.samples;
  opt.rmt.seed = g.seed;
  opt.rmt.threads = g.threads;
  opt.rmt.oracle_cap = g.cap;
  opt.rmt.threshold = threshold;
  if (mutate) opt.mutation = mutation_from_seed(*mutate, std::min(g.max_m, g.cap));
  auto checks = run_verify(opt);
  std::size_t passed = static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
  if (f == Format::json) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(check_to_json(c));
    json doc{{"scope", scope_text}, {"seed", g.seed}, {"samples", g.samples}, {"max_M", g.max_m}};
    doc["mutation"] = opt.mutation ? json(opt.mutation->describe()) : json(nullptr);
    doc["passed"] = passed;
    doc["failed"] = checks.size() - passed;
    doc["checks"] = arr;
    out << doc.dump() << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : checks) rows.push_back({c.suite, c.name, c.pass ? "PASS" : "FAIL", c.detail});
    if (opt.mutation) out << "mutation: " << opt.mutation->describe() << "\n";
    out << render_table({"suite", "check", "result", "detail"}, rows);
    out << passed << " passed, " << checks.size() - passed << " failed\n";
  }
  return passed == checks.size() ? exit_pass : exit_check_failure;
}

struct McArgs {
  std::string identity = "trace_power";
  std::uint32_t n = 2;
  std::uint32_t m = 2;
  std::uint32_t k = 1;
  std::string tau;
  std::optional<std::size_t> size;
  double threshold = 5.0;
};

inline int cmd_mc(const GlobalOptions& g, const McArgs& a, std::ostream& out, std::ostream&) {
  Format f = g.format_or(Format::json);
  reject_format(f, {Format::json, Format::human}, "mc");
  if (g.samples == 0) throw UsageError("mc: --samples must be at least 1");
  MomentReport r;
  const std::uint32_t partitions = 8;
  if (a.identity == "trace_power") {
    MatrixSampleConfig cfg;
    cfg.n = a.n;
    cfg.samples = g.samples;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    cfg.oracle_cap = g.cap;
    if (!a.tau.empty()) {
      auto spec = parse_tau_spec(a.tau, a.size);
      auto type = spec.cycle_type_of_tau();
      if (!type) throw UsageError("mc: --tau must describe a permutation tau");
      r = mc_cycle_type_moment(cfg, *type);
    } else {
      r = mc_trace_power_moment(cfg, a.m, a.k);
    }
  } else if (a.identity == "gamma_shortcut") {
    r = mc_gamma_shortcut_moment(a.n, a.m, a.k, g.samples, g.seed, partitions, g.threads, g.cap);
  } else if (a.identity == "real_trace") {
    r = mc_real_trace_law(a.n, a.m, g.samples, g.seed, partitions, g.threads);
  } else if (a.identity == "trG2") {
    r = mc_tr_G_squared_law(a.n, a.m, g.samples, g.seed, partitions, g.threads);
  } else if (a.identity == "trG2_mean") {
    r = mc_tr_G_squared_phase(a.n, g.samples, g.seed, partitions, g.threads);
  } else if (a.identity == "trG1G2") {
    r = mc_tr_G1G2_law(a.n, a.m, g.samples, g.seed, partitions, g.threads);
  } else if (a.identity == "mixed") {
    r = mixed_trace_vanishing(a.n, a.m, a.k, g.samples, g.seed, partitions, g.threads);
  } else {
    throw UsageError("mc: unknown identity '" + a.identity + "'");
  }
  const bool pass = r.passes(a.threshold);
  if (f == Format::json) {
    json j = to_json(r);
    j["threshold"] = a.threshold;
    j["pass"] = r.target ? json(pass) : json(nullptr);
    out << j.dump() << "\n";
  } else {
    std::vector<std::vector<std::string>> rows{
        {"identity", r.identity},
        {"N, M, K", std::to_string(r.n) + ", " + std::to_string(r.m) + ", " + std::to_string(r.k)},
        {"estimate", format_double(r.estimate)},
        {"std_error", format_double(r.std_error)},
        {"target", r.target ? rational_to_string(*r.target) : "-"},
        {"z", r.target ? format_double(r.z) : "-"},
        {"samples", std::to_string(r.samples)},
        {"seed", std::to_string(r.seed)},
        {"excess kurtosis", format_double(r.excess_kurtosis)},
        {"target source", r.target_source},
        {"result", r.target ? (pass ? "PASS" : "FAIL") : "no exact reference"}};
    if (r.z_imag) rows.insert(rows.begin() + 6, {"z (imaginary)", format_double(*r.z_imag)});
    out << render_table({"field", "value"}, rows);
  }
  return !r.target || pass ? exit_pass : exit_check_failure;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle statistics of commutators of random permutations: exact laws, oracle checks and "
               "random-matrix Monte-Carlo verification.",
               "commcyc"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->envname("COMMCYC_SEED");
  app.add_option("--samples", g.samples, "Monte-Carlo samples or draws")->envname("COMMCYC_SAMPLES");
  app.add_option("--max-m", g.max_m, "Largest M (verify: enumerated ground set; hultman: table size)")
      ->envname("COMMCYC_MAX_M")
      ->check(CLI::Range(1u, 64u));
  app.add_option("--cap", g.cap, "Oracle enumeration cap on the ground-set size")
      ->envname("COMMCYC_CAP")
      ->check(CLI::Range(1u, hard_enumeration_cap));
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->envname("COMMCYC_THREADS");
  app.add_option("--format", g.format, "Output format: json, human or csv")
      ->envname("COMMCYC_FORMAT")
      ->check(CLI::IsMember({"json", "human", "csv"}));

  std::string tau_text;
  std::optional<std::size_t> size;
  auto add_tau = [&](CLI::App* sub) {
    sub->add_option("tau", tau_text, "Selector: one-cycle:M, two-cycles:M, transpositions:M, uniform:M, "
                                     "alternating:M, odd:M, type:[c1,...] or cycle notation '(1 2 3)(4 5)'")
        ->required();
    sub->add_option("--size", size, "Ground-set size for cycle notation with omitted fixed points");
  };

  auto* pgf = app.add_subcommand("pgf", "Exact probability generating function of the cycle count");
  add_tau(pgf);
  auto* dist = app.add_subcommand("dist", "Exact cycle-count distribution (CSV by default)");
  add_tau(dist);
  auto* bern = app.add_subcommand("bernoulli", "Bernoulli decomposition of a cycle-count law");
  add_tau(bern);
  auto* hult = app.add_subcommand("hultman", "Hultman numbers table up to --max-m (CSV by default)");
  auto* samp = app.add_subcommand("sample", "Monte-Carlo histogram with a chi-square comparison");
  add_tau(samp);
  std::optional<std::uint64_t> draws;
  samp->add_option("--draws", draws, "Number of draws (default: --samples)");

  auto* ver = app.add_subcommand("verify", "Run invariant suites; nonzero exit on any failure");
  std::string scope = "all";
  std::optional<std::uint64_t> mutate;
  double threshold = 5.0;
  ver->add_option("--scope", scope, "factorials, genfun_vs_oracle, bernoulli, rmt or all")
      ->check(CLI::IsMember({"factorials", "genfun_vs_oracle", "bernoulli", "rmt", "all"}));
  ver->add_option("--mutate", mutate, "Perturb one closed-form coefficient chosen from this seed");
  ver->add_option("--threshold", threshold, "Largest accepted |z|");

  auto* mc = app.add_subcommand("mc", "Monte-Carlo estimate of one random-matrix identity");
  McArgs mca;
  mc->add_option("--identity", mca.identity, "trace_power, gamma_shortcut, real_trace, trG2, trG2_mean, trG1G2, mixed")
      ->check(CLI::IsMember({"trace_power", "gamma_shortcut", "real_trace", "trG2", "trG2_mean", "trG1G2", "mixed"}));
  mc->add_option("-N,--n", mca.n, "Matrix dimension")->check(CLI::PositiveNumber);
  mc->add_option("-M,--m", mca.m, "Power or moment order (mixed: M1)")->check(CLI::PositiveNumber);
  mc->add_option("-K,--k", mca.k, "Moment exponent (mixed: M2)")->check(CLI::PositiveNumber);
  mc->add_option("--tau", mca.tau, "Cycle type selector for trace_power, e.g. type:[3,2]");
  mc->add_option("--size", mca.size, "Ground-set size for cycle notation");
  mc->add_option("--threshold", mca.threshold, "Largest accepted |z|");

  std::vector<const char*> argv{"commcyc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*pgf) return cmd_pgf(g, parse_tau_spec(tau_text, size), out, err);
    if (*dist) return cmd_dist(g, parse_tau_spec(tau_text, size), out, err);
    if (*bern) return cmd_bernoulli(g, parse_tau_spec(tau_text, size), out, err);
    if (*hult) return cmd_hultman(g, out, err);
    if (*samp) return cmd_sample(g, parse_tau_spec(tau_text, size), draws.value_or(g.samples), out, err);
    if (*ver) return cmd_verify(g, scope, mutate, threshold, out, err);
    if (*mc) return cmd_mc(g, mca, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_check_failure;
  }
  return exit_usage;
}

}  // namespace commcyc::cli
