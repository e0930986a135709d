#pragma once

// JSON wire formats:
//   CyclePGF               {"M", "ground_size", "source", "coeffs": ["num/den", ...]}
//   BernoulliDecomposition {"offset", "terms": [{"p", "exact", "multiplier"}]}
//   MomentReport           {"identity", "N", "M", "K", "estimate", "std_error",
//                           "target": "num/den", "z", "samples", "seed", ...}

#include <cmath>
#include <string>

#include <json.hpp>

#include "commcyc/bernoulli.hpp"
#include "commcyc/genfun.hpp"
#include "commcyc/rmt.hpp"

namespace commcyc {

using json = nlohmann::ordered_json;

inline json to_json(const CyclePGF& pgf) {
  return json{{"M", pgf.m},
              {"ground_size", pgf.ground_size},
              {"source", std::string(to_string(pgf.source))},
              {"coeffs", pgf.poly.coefficient_strings()}};
}

inline CyclePGF pgf_from_json(const json& j) {
  CyclePGF pgf;
  pgf.m = j.at("M").get<std::uint32_t>();
  pgf.ground_size = j.contains("ground_size") ? j.at("ground_size").get<std::uint32_t>() : pgf.m;
  pgf.source = parse_pgf_source(j.at("source").get<std::string>());
  pgf.poly = RationalPoly::from_coefficient_strings(j.at("coeffs").get<std::vector<std::string>>());
  return pgf;
}

inline json to_json(const BernoulliDecomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) {
    json item;
    if (t.exact) {
      item["p"] = rational_to_string(*t.exact);
      item["exact"] = true;
    } else {
      item["p"] = t.p;
      item["exact"] = false;
    }
    item["multiplier"] = t.multiplier;
    terms.push_back(std::move(item));
  }
  return json{{"offset", d.offset}, {"terms", std::move(terms)}};
}

/// "p" may be a "num/den" string (exact) or a number (numeric).
inline BernoulliDecomposition bernoulli_from_json(const json& j) {
  BernoulliDecomposition d;
  d.offset = j.at("offset").get<std::uint32_t>();
  for (const auto& item : j.at("terms")) {
    BernoulliTerm t;
    const auto& p = item.at("p");
    if (p.is_string()) {
      t.exact = parse_rational(p.get<std::string>());
      t.p = t.exact->get_d();
    } else {
      t.p = p.get<double>();
    }
    t.multiplier = item.at("multiplier").get<std::uint32_t>();
    if (t.multiplier != 1 && t.multiplier != 2) throw std::invalid_argument("multiplier must be 1 or 2");
    if (!(t.p > 0 && t.p <= 1)) throw std::invalid_argument("Bernoulli parameter outside (0, 1]");
    d.terms.push_back(std::move(t));
  }
  return d;
}

/// Non-finite doubles become null.
inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const MomentReport& r) {
  json j{{"identity", r.identity},
         {"N", r.n},
         {"M", r.m},
         {"K", r.k},
         {"estimate", finite_or_null(r.estimate)},
         {"std_error", finite_or_null(r.std_error)},
         {"target", r.target ? json(rational_to_string(*r.target)) : json(nullptr)},
         {"z", r.target ? finite_or_null(r.z) : json(nullptr)},
         {"samples", r.samples},
         {"seed", r.seed}};
  if (r.estimate_imag) {
    j["estimate_imag"] = finite_or_null(*r.estimate_imag);
    j["std_error_imag"] = finite_or_null(r.std_error_imag.value_or(0));
    j["z_imag"] = r.z_imag ? finite_or_null(*r.z_imag) : json(nullptr);
  }
  j["partitions"] = r.partitions;
  j["excess_kurtosis"] = finite_or_null(r.excess_kurtosis);
  j["target_source"] = r.target_source;
  return j;
}

}  // namespace commcyc
