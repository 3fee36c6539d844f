// cli.cpp -- subcommand wiring, output shaping, certificate assembly, and
// the verifier that re-checks emitted certificates from their contents alone
#include "cantor/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <optional>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"
#include "cantor/homeo.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/measure.hpp"
#include "cantor/measure_algebra.hpp"
#include "cantor/measure_iso.hpp"
#include "cantor/measure_values.hpp"
#include "cantor/rational.hpp"
#include "cantor/transducer.hpp"

namespace cantor {
namespace {

void emit(std::ostream& out, const Json& doc) { out << doc.dump() << "\n"; }

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream file(path);
  if (!file) throw InvalidInput("cannot write file: " + path);
  file << doc.dump() << "\n";
}

Json span_json(const std::pair<Rational, Rational>& span) {
  return Json::array({rational_to_json(span.first), rational_to_json(span.second)});
}

std::pair<Rational, Rational> span_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("span: expected [lo, hi]");
  Rational lo = rational_from_json(j[0]);
  Rational hi = rational_from_json(j[1]);
  if (lo > hi) throw InvalidInput("span: lo exceeds hi");
  return {std::move(lo), std::move(hi)};
}

Json distance_json(const SupDistance& d) {
  Json j;
  j["depth_bound"] = d.depth_bound;
  j["exact"] = d.exact;
  j["value"] = rational_to_json(d.value);
  if (d.witness) j["witness"] = *d.witness;
  return j;
}

// Rules annotated with the exact mass each side carries.
Json mass_rules_json(const PrefixExchange& p, const CylinderMeasure& mu,
                     const CylinderMeasure& nu) {
  Json rules = Json::array();
  for (const auto& [u, v] : p.rules()) {
    Json rule;
    rule["from"] = u;
    rule["source_mass"] = rational_to_json(mu.cylinder_mass(u));
    rule["target_mass"] = rational_to_json(nu.cylinder_mass(v));
    rule["to"] = v;
    rules.push_back(std::move(rule));
  }
  return rules;
}

// ---- certificate assembly

Json approx_homeo_certificate(const TransducerMap& f, std::size_t depth, const ApproxHomeo& got) {
  Json cells = Json::array();
  const std::size_t count = std::size_t{1} << depth;
  for (std::size_t i = 0; i < count; ++i) {
    Word w;
    for (std::size_t b = depth; b-- > 0;) w += ((i >> b) & 1u) ? '1' : '0';
    Json rules = Json::array();
    for (const auto& [u, v] : got.exchange.rules()) {
      if (v.compare(0, depth, w) == 0) rules.push_back(Json::array({u, v}));
    }
    Json cell;
    cell["cell"] = w;
    cell["rules"] = std::move(rules);
    cells.push_back(std::move(cell));
  }
  Json cert;
  cert["cells"] = std::move(cells);
  cert["depth"] = depth;
  cert["distance"] = distance_json(got.distance);
  cert["exchange"] = exchange_to_json(got.exchange);
  cert["kind"] = "approx-homeo";
  cert["map"] = transducer_to_json(f);
  return cert;
}

Json measure_homeo_certificate(const TransducerMap& f, const CylinderMeasure& mu,
                               const CylinderMeasure& nu, std::size_t depth,
                               const ApproxMeasureHomeo& got) {
  Json cert;
  cert["budget"] = got.budget;
  cert["depth"] = depth;
  cert["distance"] = distance_json(got.distance);
  cert["exchange"] = exchange_to_json(got.exchange);
  cert["kind"] = "measure-homeo";
  cert["map"] = transducer_to_json(f);
  cert["mu"] = measure_to_json(mu);
  cert["nu"] = measure_to_json(nu);
  cert["rules"] = mass_rules_json(got.exchange, mu, nu);
  return cert;
}

Json tower_certificate(const CaratheodoryTower& t) {
  Json generators = Json::array();
  for (const ClopenSet& g : t.generators) generators.push_back(clopen_to_json(g));
  Json levels = Json::array();
  for (const TowerLevel& level : t.levels) {
    Json cells = Json::array();
    for (std::size_t i = 0; i < level.partition.cells().size(); ++i) {
      Json cell;
      cell["set"] = clopen_to_json(level.partition.cells()[i]);
      cell["span"] = span_json(level.spans[i]);
      cells.push_back(std::move(cell));
    }
    Json entry;
    entry["cells"] = std::move(cells);
    levels.push_back(std::move(entry));
  }
  Json cert;
  cert["generators"] = std::move(generators);
  cert["kind"] = "caratheodory-tower";
  cert["levels"] = std::move(levels);
  cert["measure"] = measure_to_json(t.measure);
  return cert;
}

Json matched_tower_certificate(const TransducerMap& f, const std::vector<ClopenSet>& generators,
                               std::size_t extra_levels, const MatchedTower& t) {
  Json gens = Json::array();
  for (const ClopenSet& g : generators) gens.push_back(clopen_to_json(g));
  Json levels = Json::array();
  for (const MatchedLevel& level : t.levels) {
    Json cells = Json::array();
    for (const MatchedCell& cell : level.cells) {
      Json c;
      c["domain"] = clopen_to_json(cell.domain);
      c["range"] = clopen_to_json(cell.range);
      c["span"] = span_json(cell.span);
      cells.push_back(std::move(c));
    }
    Json entry;
    entry["cells"] = std::move(cells);
    levels.push_back(std::move(entry));
  }
  Json cert;
  cert["budget"] = t.budget;
  cert["extra_levels"] = extra_levels;
  cert["found"] = t.found;
  cert["generators"] = std::move(gens);
  cert["kind"] = "matched-tower";
  cert["levels"] = std::move(levels);
  cert["map"] = transducer_to_json(f);
  cert["mu"] = measure_to_json(t.mu);
  if (!t.note.empty()) cert["note"] = t.note;
  cert["nu"] = measure_to_json(t.nu);
  return cert;
}

Json subset_certificate(const CylinderMeasure& m, const ClopenSet& within, const Rational& target,
                        std::size_t budget, const ClopenSet& found) {
  Json cert;
  cert["budget"] = budget;
  cert["kind"] = "clopen-subset";
  cert["measure"] = measure_to_json(m);
  cert["subset"] = clopen_to_json(found);
  cert["target"] = rational_to_json(target);
  cert["within"] = clopen_to_json(within);
  return cert;
}

std::size_t half_fold_check_depth(const CylinderMeasure& m) {
  return std::max<std::size_t>(8, m.param_depth() + 4);
}

Json half_fold_certificate(const CylinderMeasure& m, std::size_t budget, const HalfFold& fold) {
  Json cert;
  cert["budget"] = budget;
  cert["checked_depth"] = half_fold_check_depth(m);
  cert["half"] = clopen_to_json(fold.half);
  cert["kind"] = "half-fold";
  cert["machine"] = transducer_to_json(fold.machine);
  cert["measure"] = measure_to_json(m);
  return cert;
}

// ---- certificate verification

// A recorded exchange that fails to parse is a refuted claim, not a usage
// error: the certificate asserts these rules form a homeomorphism.
std::optional<PrefixExchange> claimed_exchange(const Json& j, std::string& detail) {
  try {
    return exchange_from_json(j);
  } catch (const InvalidInput& e) {
    detail = std::string("recorded rules do not form an exchange: ") + e.what();
    return std::nullopt;
  }
}

bool bijective_exchange(const PrefixExchange& p, std::string& detail) {
  if (!p.source().is_whole()) {
    detail = "rule sources do not tile the space";
    return false;
  }
  if (!p.target().is_whole()) {
    detail = "rule targets do not tile the space";
    return false;
  }
  return true;
}

bool distance_matches(const SupDistance& got, const Json& recorded, std::string& detail) {
  if (got.exact != recorded.at("exact").get<bool>()) {
    detail = "recomputed distance exactness differs";
    return false;
  }
  if (got.value != rational_from_json(recorded.at("value"))) {
    detail = "recomputed distance value differs";
    return false;
  }
  const bool recorded_witness = recorded.contains("witness");
  if (recorded_witness != got.witness.has_value() ||
      (recorded_witness && *got.witness != recorded.at("witness").get<std::string>())) {
    detail = "recomputed distance witness differs";
    return false;
  }
  return true;
}

bool verify_approx_homeo(const Json& cert, std::string& detail) {
  const TransducerMap f = transducer_from_json(cert.at("map"));
  const std::size_t depth = cert.at("depth").get<std::size_t>();
  const std::optional<PrefixExchange> parsed = claimed_exchange(cert.at("exchange"), detail);
  if (!parsed) return false;
  const PrefixExchange& g = *parsed;
  if (!bijective_exchange(g, detail)) return false;

  std::vector<std::pair<Word, Word>> collected;
  for (const Json& cell : cert.at("cells")) {
    const Word w = cell.at("cell").get<std::string>();
    std::vector<Word> sources;
    for (const Json& rule : cell.at("rules")) {
      const Word u = rule.at(0).get<std::string>();
      const Word v = rule.at(1).get<std::string>();
      if (v.compare(0, w.size(), w) != 0) {
        detail = "cell " + w + ": rule target leaves the cell";
        return false;
      }
      sources.push_back(u);
      collected.emplace_back(u, v);
    }
    if (ClopenSet::canonical(sources) != preimage_clopen(f, ClopenSet::cylinder(w))) {
      detail = "cell " + w + ": rule sources do not cover its preimage";
      return false;
    }
  }
  std::sort(collected.begin(), collected.end());
  if (collected != g.rules()) {
    detail = "per-cell rules disagree with the exchange";
    return false;
  }

  const Json& recorded = cert.at("distance");
  const SupDistance d = sup_distance(from_prefix_exchange(g), f,
                                     recorded.at("depth_bound").get<std::size_t>());
  if (!distance_matches(d, recorded, detail)) return false;
  if (d.value > pow2_inv(depth)) {
    detail = "distance exceeds the promised bound";
    return false;
  }
  return true;
}

bool mass_rules_match(const PrefixExchange& g, const Json& rules, const CylinderMeasure& mu,
                      const CylinderMeasure& nu, std::string& detail) {
  if (rules.size() != g.rules().size()) {
    detail = "annotated rule count disagrees with the exchange";
    return false;
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Json& rule = rules[i];
    const Word u = rule.at("from").get<std::string>();
    const Word v = rule.at("to").get<std::string>();
    if (u != g.rules()[i].first || v != g.rules()[i].second) {
      detail = "annotated rule " + u + " -> " + v + " disagrees with the exchange";
      return false;
    }
    const Rational source = rational_from_json(rule.at("source_mass"));
    const Rational target = rational_from_json(rule.at("target_mass"));
    if (mu.cylinder_mass(u) != source) {
      detail = "rule " + u + " -> " + v + ": recorded source mass is wrong";
      return false;
    }
    if (nu.cylinder_mass(v) != target) {
      detail = "rule " + u + " -> " + v + ": recorded target mass is wrong";
      return false;
    }
    if (source != target) {
      detail = "rule " + u + " -> " + v + " moves mass";
      return false;
    }
  }
  return true;
}

bool verify_measure_homeo(const Json& cert, std::string& detail) {
  const TransducerMap f = transducer_from_json(cert.at("map"));
  const CylinderMeasure mu = measure_from_json(cert.at("mu"));
  const CylinderMeasure nu = measure_from_json(cert.at("nu"));
  const std::size_t depth = cert.at("depth").get<std::size_t>();
  const std::optional<PrefixExchange> parsed = claimed_exchange(cert.at("exchange"), detail);
  if (!parsed) return false;
  const PrefixExchange& g = *parsed;
  if (!bijective_exchange(g, detail)) return false;
  if (!mass_rules_match(g, cert.at("rules"), mu, nu, detail)) return false;

  const Json& recorded = cert.at("distance");
  const SupDistance d = sup_distance(from_prefix_exchange(g), f,
                                     recorded.at("depth_bound").get<std::size_t>());
  if (!distance_matches(d, recorded, detail)) return false;
  if (d.value > pow2_inv(depth)) {
    detail = "distance exceeds the promised bound";
    return false;
  }
  return true;
}

struct ParsedLevel {
  std::vector<ClopenSet> sets;
  std::vector<std::pair<Rational, Rational>> spans;
};

bool spans_tile(const std::vector<std::pair<Rational, Rational>>& spans, const Rational& total,
                std::string& detail) {
  std::vector<std::pair<Rational, Rational>> sorted = spans;
  std::sort(sorted.begin(), sorted.end());
  Rational cursor(0);
  for (const auto& [lo, hi] : sorted) {
    if (lo != cursor) {
      detail = "intervals leave a gap or overlap at " + rational_str(lo);
      return false;
    }
    cursor = hi;
  }
  if (cursor != total) {
    detail = "intervals do not end at " + rational_str(total);
    return false;
  }
  return true;
}

bool verify_caratheodory(const Json& cert, std::string& detail) {
  const CylinderMeasure m = measure_from_json(cert.at("measure"));
  std::vector<ClopenSet> generators;
  for (const Json& g : cert.at("generators")) generators.push_back(clopen_from_json(g));

  std::vector<ParsedLevel> levels;
  for (const Json& level : cert.at("levels")) {
    ParsedLevel parsed;
    for (const Json& cell : level.at("cells")) {
      parsed.sets.push_back(clopen_from_json(cell.at("set")));
      parsed.spans.push_back(span_from_json(cell.at("span")));
    }
    levels.push_back(std::move(parsed));
  }
  if (levels.empty()) {
    detail = "certificate has no levels";
    return false;
  }
  if (generators.size() < levels.size()) {
    detail = "fewer generators than levels";
    return false;
  }

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const ParsedLevel& level = levels[li];
    const std::string where = " at level " + std::to_string(li + 1);
    try {
      ClopenPartition::make(ClopenSet::whole(), level.sets);
    } catch (const InvalidInput&) {
      detail = "cells do not partition the space" + where;
      return false;
    }
    const Rational mesh_bound = Rational(1) / static_cast<long>(li + 1);
    for (std::size_t i = 0; i < level.sets.size(); ++i) {
      const Rational mass = clopen_mass(m, level.sets[i]);
      if (mass != level.spans[i].second - level.spans[i].first) {
        detail = "cell mass differs from its interval length" + where;
        return false;
      }
      if (mass > mesh_bound) {
        detail = "cell mass exceeds the mesh schedule" + where;
        return false;
      }
    }
    if (!spans_tile(level.spans, m.total(), detail)) {
      detail += where;
      return false;
    }
    for (std::size_t gi = 0; gi <= li; ++gi) {
      for (const ClopenSet& cell : level.sets) {
        if (!is_subset(cell, generators[gi]) && !is_disjoint(cell, generators[gi])) {
          detail = "a cell straddles generator " + std::to_string(gi) + where;
          return false;
        }
      }
    }
    if (li == 0) continue;
    const ParsedLevel& parent = levels[li - 1];
    for (std::size_t i = 0; i < level.sets.size(); ++i) {
      bool nested = false;
      for (std::size_t j = 0; j < parent.sets.size(); ++j) {
        if (!is_subset(level.sets[i], parent.sets[j])) continue;
        nested = parent.spans[j].first <= level.spans[i].first &&
                 level.spans[i].second <= parent.spans[j].second;
        break;
      }
      if (!nested) {
        detail = "a cell or its interval escapes its parent" + where;
        return false;
      }
    }
  }
  return true;
}

bool verify_matched_tower(const Json& cert, std::string& detail) {
  const TransducerMap f = transducer_from_json(cert.at("map"));
  const CylinderMeasure mu = measure_from_json(cert.at("mu"));
  const CylinderMeasure nu = measure_from_json(cert.at("nu"));

  std::vector<std::vector<ClopenSet>> domains, ranges;
  std::vector<std::vector<std::pair<Rational, Rational>>> spans;
  for (const Json& level : cert.at("levels")) {
    std::vector<ClopenSet> dom, ran;
    std::vector<std::pair<Rational, Rational>> spn;
    for (const Json& cell : level.at("cells")) {
      dom.push_back(clopen_from_json(cell.at("domain")));
      ran.push_back(clopen_from_json(cell.at("range")));
      spn.push_back(span_from_json(cell.at("span")));
    }
    domains.push_back(std::move(dom));
    ranges.push_back(std::move(ran));
    spans.push_back(std::move(spn));
  }

  for (std::size_t li = 0; li < domains.size(); ++li) {
    const std::string where = " at level " + std::to_string(li);
    try {
      ClopenPartition::make(ClopenSet::whole(), domains[li]);
      ClopenPartition::make(ClopenSet::whole(), ranges[li]);
    } catch (const InvalidInput&) {
      detail = "cells do not partition the space" + where;
      return false;
    }
    for (std::size_t i = 0; i < domains[li].size(); ++i) {
      const Rational dom_mass = clopen_mass(mu, domains[li][i]);
      const Rational ran_mass = clopen_mass(nu, ranges[li][i]);
      const Rational width = spans[li][i].second - spans[li][i].first;
      if (dom_mass != ran_mass || dom_mass != width) {
        detail = "matched masses and interval length disagree" + where;
        return false;
      }
    }
    if (li == 0) {
      for (std::size_t i = 0; i < domains[0].size(); ++i) {
        if (domains[0][i] != preimage_clopen(f, ranges[0][i])) {
          detail = "a base domain cell is not the preimage of its range cell";
          return false;
        }
      }
      continue;
    }
    if (domains[li].size() != 2 * domains[li - 1].size()) {
      detail = "level does not double the cell count" + where;
      return false;
    }
    for (std::size_t i = 0; i < domains[li].size(); ++i) {
      const std::size_t p = i / 2;
      if (!is_subset(domains[li][i], domains[li - 1][p]) ||
          !is_subset(ranges[li][i], ranges[li - 1][p])) {
        detail = "a child cell escapes its parent" + where;
        return false;
      }
      const auto& parent = spans[li - 1][p];
      const auto& child = spans[li][i];
      const bool left = (i % 2) == 0;
      if ((left && child.first != parent.first) ||
          (!left && child.second != parent.second) ||
          (!left && spans[li][i - 1].second != child.first)) {
        detail = "child intervals do not split their parent" + where;
        return false;
      }
    }
  }
  return true;
}

bool verify_clopen_subset(const Json& cert, std::string& detail) {
  const CylinderMeasure m = measure_from_json(cert.at("measure"));
  const ClopenSet within = clopen_from_json(cert.at("within"));
  const ClopenSet subset = clopen_from_json(cert.at("subset"));
  const Rational target = rational_from_json(cert.at("target"));
  if (!is_subset(subset, within)) {
    detail = "claimed subset is not inside the region";
    return false;
  }
  if (clopen_mass(m, subset) != target) {
    detail = "claimed subset misses the target mass";
    return false;
  }
  return true;
}

bool verify_half_fold(const Json& cert, std::string& detail) {
  const CylinderMeasure m = measure_from_json(cert.at("measure"));
  const TransducerMap machine = transducer_from_json(cert.at("machine"));
  const ClopenSet half = clopen_from_json(cert.at("half"));
  const std::size_t depth = cert.at("checked_depth").get<std::size_t>();
  if (clopen_mass(m, half) * 2 != m.total()) {
    detail = "the folded piece does not carry half the mass";
    return false;
  }
  if (!check_preserves(machine, m, m, depth).preserved) {
    detail = "the machine does not preserve the measure to the checked depth";
    return false;
  }
  if (!surjectivity_decide(machine).surjective) {
    detail = "the machine is not onto";
    return false;
  }
  return true;
}

bool verify_demo(const Json& cert, std::string& detail) {
  const TransducerMap f = transducer_from_json(cert.at("map"));
  const std::string mode = cert.at("mode").get<std::string>();
  const bool measured = mode == "measure";
  CylinderMeasure mu = CylinderMeasure::bernoulli(Rational(1) / 2);
  CylinderMeasure nu = mu;
  if (measured) {
    mu = measure_from_json(cert.at("mu"));
    nu = measure_from_json(cert.at("nu"));
  }
  const Json& rows = cert.at("rows");
  if (rows.size() != cert.at("n_max").get<std::size_t>()) {
    detail = "row count disagrees with n_max";
    return false;
  }
  for (const Json& row : rows) {
    const std::size_t n = row.at("n").get<std::size_t>();
    const std::string where = " in row " + std::to_string(n);
    const std::optional<PrefixExchange> parsed = claimed_exchange(row.at("exchange"), detail);
    if (!parsed) {
      detail += where;
      return false;
    }
    const PrefixExchange& g = *parsed;
    if (!bijective_exchange(g, detail)) {
      detail += where;
      return false;
    }
    if (measured && !mass_rules_match(g, row.at("rules"), mu, nu, detail)) {
      detail += where;
      return false;
    }
    const Json& recorded = row.at("distance");
    const SupDistance d = sup_distance(from_prefix_exchange(g), f,
                                       recorded.at("depth_bound").get<std::size_t>());
    if (!distance_matches(d, recorded, detail)) {
      detail += where;
      return false;
    }
    if (d.value > pow2_inv(n)) {
      detail = "distance exceeds the promised bound" + where;
      return false;
    }
  }
  return true;
}

}  // namespace

bool verify_certificate(const Json& certificate, std::string& detail) {
  try {
    if (!certificate.is_object() || !certificate.contains("kind")) {
      throw InvalidInput("certificate: missing \"kind\"");
    }
    const std::string kind = certificate.at("kind").get<std::string>();
    if (kind == "approx-homeo") return verify_approx_homeo(certificate, detail);
    if (kind == "measure-homeo") return verify_measure_homeo(certificate, detail);
    if (kind == "caratheodory-tower") return verify_caratheodory(certificate, detail);
    if (kind == "matched-tower") return verify_matched_tower(certificate, detail);
    if (kind == "clopen-subset") return verify_clopen_subset(certificate, detail);
    if (kind == "half-fold") return verify_half_fold(certificate, detail);
    if (kind == "demo-generic") return verify_demo(certificate, detail);
    throw InvalidInput("certificate: unknown kind \"" + kind + "\"");
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("certificate: ") + e.what());
  }
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact clopen algebra, machine maps, and measure certificates on binary sequence space"};
  app.name("cantorctl");
  app.require_subcommand(1);
  app.fallthrough(true);

  unsigned long long seed = 0;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "recorded in the output for reproducibility");

  std::string words_arg, op_arg, a_arg, b_arg, map_arg, set_arg, f_arg, g_arg;
  std::string measure_arg, mu_arg, nu_arg, within_arg, target_arg, values_arg, ambient_arg;
  std::string mode_arg, out_path, cert_path;
  std::size_t depth = 0, budget = 0, agree = 0, n_max = 0, buffer_bound = 64;

  CLI::App* canon = app.add_subcommand("canon", "canonical antichain of a word list");
  canon->add_option("--words", words_arg, "JSON array of words")->required();

  CLI::App* boolop = app.add_subcommand("boolop", "boolean operation on clopen sets");
  boolop->add_option("--op", op_arg, "operation")
      ->required()
      ->check(CLI::IsMember({"union", "intersection", "difference", "sym-diff", "complement"}));
  boolop->add_option("--a", a_arg, "first operand")->required();
  CLI::Option* boolop_b = boolop->add_option("--b", b_arg, "second operand");

  CLI::App* preimage = app.add_subcommand("preimage", "exact preimage of a clopen set");
  preimage->add_option("--map", map_arg)->required();
  preimage->add_option("--set", set_arg)->required();

  CLI::App* distance = app.add_subcommand("distance", "supremum distance between two maps");
  distance->add_option("--f", f_arg)->required();
  distance->add_option("--g", g_arg)->required();
  distance->add_option("--depth", depth, "output bits to resolve")->required();

  CLI::App* surjective = app.add_subcommand("surjective", "does the image meet every cylinder");
  surjective->add_option("--map", map_arg)->required();

  CLI::App* injective = app.add_subcommand("injective", "injectivity certificate");
  injective->add_option("--map", map_arg)->required();
  injective->add_option("--buffer-bound", buffer_bound, "pending-output cap");

  CLI::App* approx = app.add_subcommand("approx-homeo", "homeomorphism within 2^-depth of a map");
  approx->add_option("--map", map_arg)->required();
  approx->add_option("--depth", depth)->required();
  approx->add_option("--out", out_path, "write the exchange here");
  approx->add_option("--certificate", cert_path, "write the certificate here");

  CLI::App* measure_cmd = app.add_subcommand("measure", "mass of a clopen set");
  measure_cmd->add_option("--measure", measure_arg)->required();
  measure_cmd->add_option("--set", set_arg)->required();

  CLI::App* preserve = app.add_subcommand("preserve", "does the map push one measure to the other");
  preserve->add_option("--map", map_arg)->required();
  preserve->add_option("--mu", mu_arg)->required();
  preserve->add_option("--nu", nu_arg)->required();
  preserve->add_option("--depth", depth)->required();

  CLI::App* tower = app.add_subcommand("caratheodory", "interval model of the clopen algebra");
  tower->add_option("--measure", measure_arg)->required();
  tower->add_option("--depth", depth, "levels to build")->required();
  tower->add_option("--out", out_path, "write the tower here");

  CLI::App* iso = app.add_subcommand("algebra-iso", "matched refinement towers across a map");
  iso->add_option("--map", map_arg)->required();
  iso->add_option("--mu", mu_arg)->required();
  iso->add_option("--nu", nu_arg)->required();
  iso->add_option("--agree", agree, "generators the base level must match")->required();
  iso->add_option("--depth", depth, "extra refinement levels")->required();
  iso->add_option("--budget", budget, "word-length cap for carved pieces");
  iso->add_option("--out", out_path, "write the tower here");

  CLI::App* values = app.add_subcommand("values", "masses of clopen sets up to a depth");
  values->add_option("--measure", measure_arg)->required();
  values->add_option("--depth", depth)->required();
  values->add_option("--ambient", ambient_arg, "restrict to subsets of this clopen set");

  CLI::App* group_like = app.add_subcommand("group-like", "closure of the value set under differences");
  CLI::Option* gl_measure = group_like->add_option("--measure", measure_arg);
  CLI::Option* gl_depth = group_like->add_option("--depth", depth);
  CLI::Option* gl_values = group_like->add_option("--values", values_arg, "explicit JSON array of rationals");
  gl_measure->needs(gl_depth);
  gl_values->excludes(gl_measure);

  CLI::App* subset = app.add_subcommand("subset", "clopen subset of prescribed mass");
  subset->add_option("--measure", measure_arg)->required();
  subset->add_option("--within", within_arg)->required();
  subset->add_option("--target", target_arg, "mass to realize")->required();
  subset->add_option("--budget", budget, "word-length cap (0 = default)");
  subset->add_option("--certificate", cert_path);

  CLI::App* scan = app.add_subcommand("good-scan", "hunt for unrealizable masses");
  scan->add_option("--measure", measure_arg)->required();
  scan->add_option("--depth", depth)->required();
  scan->add_option("--budget", budget)->required();

  CLI::App* mhomeo = app.add_subcommand("measure-homeo", "measure-respecting homeomorphism near a map");
  mhomeo->add_option("--map", map_arg)->required();
  mhomeo->add_option("--mu", mu_arg)->required();
  mhomeo->add_option("--nu", nu_arg)->required();
  mhomeo->add_option("--depth", depth)->required();
  mhomeo->add_option("--budget", budget, "word-length cap (0 = default)");
  mhomeo->add_option("--out", out_path, "write the exchange here");
  mhomeo->add_option("--certificate", cert_path);

  CLI::App* hfold = app.add_subcommand("half-fold", "two-to-one self-map preserving the measure");
  hfold->add_option("--measure", measure_arg)->required();
  hfold->add_option("--budget", budget, "word-length cap (0 = default)");
  hfold->add_option("--out", out_path, "write the certificate here");

  CLI::App* demo = app.add_subcommand("demo-generic", "invertible maps approaching the given map");
  demo->add_option("--map", map_arg)->required();
  demo->add_option("--mode", mode_arg)->required()->check(CLI::IsMember({"topological", "measure"}));
  demo->add_option("--n-max", n_max, "final approximation step")->required();
  demo->add_option("--mu", mu_arg, "source measure (measure mode)");
  demo->add_option("--nu", nu_arg, "target measure (defaults to --mu)");
  demo->add_option("--out", out_path, "write the report here");

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate from its contents");
  verify->add_option("--certificate", cert_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto finish = [&](Json doc) {
    if (seed_opt->count() > 0) doc["seed"] = seed;
    return doc;
  };

  try {
    if (*canon) {
      const Json words = load_json_arg(words_arg);
      if (!words.is_array()) throw InvalidInput("canon: --words expects a JSON array");
      std::vector<Word> list;
      for (const Json& w : words) {
        if (!w.is_string()) throw InvalidInput("canon: --words expects strings");
        list.push_back(w.get<std::string>());
      }
      emit(out, finish(clopen_to_json(ClopenSet::canonical(list))));
      return 0;
    }

    if (*boolop) {
      const ClopenSet a = clopen_from_json(load_json_arg(a_arg));
      if (op_arg != "complement" && boolop_b->count() == 0) {
        throw InvalidInput("boolop: --op " + op_arg + " needs --b");
      }
      const ClopenSet b = boolop_b->count() > 0 ? clopen_from_json(load_json_arg(b_arg)) : ClopenSet();
      ClopenSet result;
      if (op_arg == "union") result = set_union(a, b);
      else if (op_arg == "intersection") result = set_intersection(a, b);
      else if (op_arg == "difference") result = set_difference(a, b);
      else if (op_arg == "sym-diff") result = boolean_sum(a, b);
      else result = set_complement(a);
      emit(out, finish(clopen_to_json(result)));
      return 0;
    }

    if (*preimage) {
      const TransducerMap f = transducer_from_json(load_json_arg(map_arg));
      const ClopenSet a = clopen_from_json(load_json_arg(set_arg));
      emit(out, finish(clopen_to_json(preimage_clopen(f, a))));
      return 0;
    }

    if (*distance) {
      const TransducerMap f = transducer_from_json(load_json_arg(f_arg));
      const TransducerMap g = transducer_from_json(load_json_arg(g_arg));
      emit(out, finish(distance_json(sup_distance(f, g, depth))));
      return 0;
    }

    if (*surjective) {
      const SurjectivityResult r = surjectivity_decide(transducer_from_json(load_json_arg(map_arg)));
      Json doc;
      if (r.surjective) {
        doc["status"] = "surjective";
        emit(out, finish(doc));
        return 0;
      }
      doc["status"] = "not-surjective";
      doc["witness"] = r.witness;
      emit(out, finish(doc));
      return 1;
    }

    if (*injective) {
      const InjectivityResult r =
          injectivity_certificate(transducer_from_json(load_json_arg(map_arg)), buffer_bound);
      Json doc;
      if (r.kind == InjectivityResult::Kind::Injective) {
        Json separation = Json::array();
        for (const auto& [n, m] : r.separation) {
          Json pair;
          pair["input_bits"] = n;
          pair["output_bits"] = m;
          separation.push_back(std::move(pair));
        }
        doc["separation"] = std::move(separation);
        doc["status"] = "injective";
        emit(out, finish(doc));
        return 0;
      }
      if (r.kind == InjectivityResult::Kind::NotInjective) {
        doc["loop_a"] = r.loop_a;
        doc["loop_b"] = r.loop_b;
        doc["status"] = "not-injective";
        doc["stem_a"] = r.stem_a;
        doc["stem_b"] = r.stem_b;
        emit(out, finish(doc));
        return 1;
      }
      doc["buffer_bound"] = r.buffer_bound;
      doc["note"] = r.note;
      doc["status"] = "unknown";
      emit(out, finish(doc));
      return 3;
    }

    if (*approx) {
      const TransducerMap f = transducer_from_json(load_json_arg(map_arg));
      const ApproxHomeo got = approx_homeo(f, depth);
      if (!out_path.empty()) write_json_file(out_path, exchange_to_json(got.exchange));
      if (!cert_path.empty()) write_json_file(cert_path, approx_homeo_certificate(f, depth, got));
      Json doc;
      doc["distance"] = distance_json(got.distance);
      doc["exchange"] = exchange_to_json(got.exchange);
      emit(out, finish(doc));
      return 0;
    }

    if (*measure_cmd) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const ClopenSet a = clopen_from_json(load_json_arg(set_arg));
      Json doc;
      doc["mass"] = rational_to_json(clopen_mass(m, a));
      emit(out, finish(doc));
      return 0;
    }

    if (*preserve) {
      const PreservationCheck r =
          check_preserves(transducer_from_json(load_json_arg(map_arg)),
                          measure_from_json(load_json_arg(mu_arg)),
                          measure_from_json(load_json_arg(nu_arg)), depth);
      Json doc;
      if (r.preserved) {
        doc["depth"] = r.depth;
        doc["status"] = "preserved";
        emit(out, finish(doc));
        return 0;
      }
      doc["lhs"] = rational_to_json(r.lhs);
      doc["rhs"] = rational_to_json(r.rhs);
      doc["status"] = "violated";
      doc["witness"] = r.word;
      emit(out, finish(doc));
      return 1;
    }

    if (*tower) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const Json cert = tower_certificate(caratheodory_tower(m, depth));
      if (!out_path.empty()) write_json_file(out_path, cert);
      emit(out, finish(cert));
      return 0;
    }

    if (*iso) {
      const TransducerMap f = transducer_from_json(load_json_arg(map_arg));
      const CylinderMeasure mu = measure_from_json(load_json_arg(mu_arg));
      const CylinderMeasure nu = measure_from_json(load_json_arg(nu_arg));
      const std::vector<ClopenSet> generators = cylinder_generators(agree);
      const MatchedTower t = approx_algebra_iso(f, mu, nu, generators, depth, budget);
      const Json cert = matched_tower_certificate(f, generators, depth, t);
      if (!out_path.empty()) write_json_file(out_path, cert);
      emit(out, finish(cert));
      return t.found ? 0 : 3;
    }

    if (*values) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const std::vector<Rational> list =
          ambient_arg.empty() ? clopen_values(m, depth)
                              : clopen_values(m, clopen_from_json(load_json_arg(ambient_arg)), depth);
      Json doc;
      Json arr = Json::array();
      for (const Rational& v : list) arr.push_back(rational_to_json(v));
      doc["values"] = std::move(arr);
      emit(out, finish(doc));
      return 0;
    }

    if (*group_like) {
      GroupLikeCheck r;
      if (gl_values->count() > 0) {
        const Json list = load_json_arg(values_arg);
        if (!list.is_array()) throw InvalidInput("group-like: --values expects a JSON array");
        std::vector<Rational> vals;
        for (const Json& v : list) vals.push_back(rational_from_json(v));
        r = group_like_check(vals);
      } else if (gl_measure->count() > 0) {
        r = group_like_check(measure_from_json(load_json_arg(measure_arg)), depth);
      } else {
        throw InvalidInput("group-like: pass --measure with --depth, or --values");
      }
      Json doc;
      if (r.holds) {
        if (gl_measure->count() > 0) doc["depth"] = r.depth;
        doc["status"] = "group-like";
        emit(out, finish(doc));
        return 0;
      }
      doc["gap"] = rational_to_json(r.gap);
      doc["s"] = rational_to_json(r.s);
      doc["status"] = "counterexample";
      doc["t"] = rational_to_json(r.t);
      emit(out, finish(doc));
      return 1;
    }

    if (*subset) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const ClopenSet within = clopen_from_json(load_json_arg(within_arg));
      const Rational target = parse_rational(target_arg);
      const std::optional<ClopenSet> found = find_clopen_subset(m, within, target, budget);
      Json doc;
      if (!found) {
        doc["budget"] = budget;
        doc["status"] = "not-found-up-to-budget";
        emit(out, finish(doc));
        return 3;
      }
      if (!cert_path.empty()) {
        write_json_file(cert_path, subset_certificate(m, within, target, budget, *found));
      }
      doc["status"] = "found";
      doc["subset"] = clopen_to_json(*found);
      emit(out, finish(doc));
      return 0;
    }

    if (*scan) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const GoodnessScan r = goodness_scan(m, depth, depth, budget);
      Json doc;
      if (r.good) {
        doc["set_depth"] = r.set_depth;
        doc["status"] = "consistent";
        doc["value_depth"] = r.value_depth;
        emit(out, finish(doc));
        return 0;
      }
      doc["region"] = clopen_to_json(r.region);
      doc["status"] = "obstruction";
      doc["t"] = rational_to_json(r.t);
      doc["witness"] = clopen_to_json(r.witness);
      emit(out, finish(doc));
      return 1;
    }

    if (*mhomeo) {
      const TransducerMap f = transducer_from_json(load_json_arg(map_arg));
      const CylinderMeasure mu = measure_from_json(load_json_arg(mu_arg));
      const CylinderMeasure nu = measure_from_json(load_json_arg(nu_arg));
      const ApproxMeasureHomeo got = approx_measure_homeo(f, mu, nu, depth, budget);
      Json doc;
      if (!got.found) {
        doc["note"] = got.note +
            " (either the matching needs longer words than the budget allows, or the clopen"
            " masses available on the two sides genuinely differ)";
        doc["status"] = "failed-at-budget";
        emit(out, finish(doc));
        return 3;
      }
      if (!out_path.empty()) write_json_file(out_path, exchange_to_json(got.exchange));
      if (!cert_path.empty()) {
        write_json_file(cert_path, measure_homeo_certificate(f, mu, nu, depth, got));
      }
      doc["distance"] = distance_json(got.distance);
      doc["exchange"] = exchange_to_json(got.exchange);
      doc["rules"] = mass_rules_json(got.exchange, mu, nu);
      emit(out, finish(doc));
      return 0;
    }

    if (*hfold) {
      const CylinderMeasure m = measure_from_json(load_json_arg(measure_arg));
      const HalfFold folded = half_fold(m, budget);
      const Json cert = half_fold_certificate(m, budget, folded);
      if (!out_path.empty()) write_json_file(out_path, cert);
      emit(out, finish(cert));
      return 0;
    }

    if (*demo) {
      const TransducerMap f = transducer_from_json(load_json_arg(map_arg));
      const bool measured = mode_arg == "measure";
      if (measured && mu_arg.empty()) throw InvalidInput("demo-generic: measure mode needs --mu");
      CylinderMeasure mu = CylinderMeasure::bernoulli(Rational(1) / 2);
      if (measured) mu = measure_from_json(load_json_arg(mu_arg));
      CylinderMeasure nu = nu_arg.empty() ? mu : measure_from_json(load_json_arg(nu_arg));

      Json rows = Json::array();
      for (std::size_t n = 1; n <= n_max; ++n) {
        Json row;
        row["n"] = n;
        if (measured) {
          const ApproxMeasureHomeo got = approx_measure_homeo(f, mu, nu, n, budget);
          if (!got.found) throw BudgetExhausted("step " + std::to_string(n) + ": " + got.note);
          row["distance"] = distance_json(got.distance);
          row["exchange"] = exchange_to_json(got.exchange);
          row["rules"] = mass_rules_json(got.exchange, mu, nu);
        } else {
          const ApproxHomeo got = approx_homeo(f, n);
          row["distance"] = distance_json(got.distance);
          row["exchange"] = exchange_to_json(got.exchange);
        }
        rows.push_back(std::move(row));
      }
      Json cert;
      cert["kind"] = "demo-generic";
      cert["map"] = transducer_to_json(f);
      cert["mode"] = mode_arg;
      if (measured) {
        cert["mu"] = measure_to_json(mu);
        cert["nu"] = measure_to_json(nu);
      }
      cert["n_max"] = n_max;
      cert["rows"] = std::move(rows);
      if (!out_path.empty()) write_json_file(out_path, cert);
      emit(out, finish(cert));
      return 0;
    }

    if (*verify) {
      const Json cert = load_json_arg(cert_path);
      std::string detail;
      Json doc;
      if (verify_certificate(cert, detail)) {
        doc["kind"] = cert.at("kind");
        doc["status"] = "verified";
        emit(out, finish(doc));
        return 0;
      }
      doc["detail"] = detail;
      doc["status"] = "verification-failed";
      emit(out, finish(doc));
      return 1;
    }

    err << "error: no subcommand\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const WitnessedFailure& e) {
    Json doc;
    doc["detail"] = e.what();
    doc["status"] = "failed";
    doc["witness"] = e.witness();
    emit(out, finish(doc));
    return 1;
  } catch (const BudgetExhausted& e) {
    Json doc;
    doc["detail"] = e.what();
    doc["status"] = "budget-exhausted";
    emit(out, finish(doc));
    return 3;
  } catch (const ResourceLimit& e) {
    Json doc;
    doc["detail"] = e.what();
    doc["status"] = "resource-limit";
    emit(out, finish(doc));
    return 3;
  }
}

}  // namespace cantor
