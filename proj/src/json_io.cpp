// json_io.cpp -- JSON codecs for the core value types
#include "cantor/json_io.hpp"

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

const Json& expect_object(const Json& j, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + ": expected a JSON object");
  return j;
}

const Json& expect_field(const Json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  }
  return *it;
}

std::string expect_string(const Json& j, const char* what) {
  if (!j.is_string()) throw InvalidInput(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::size_t expect_size(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    throw InvalidInput(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<Word> word_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected an array of words");
  std::vector<Word> words;
  for (const Json& item : j) words.push_back(expect_string(item, what));
  return words;
}

}  // namespace

Json rational_to_json(const Rational& q) { return rational_str(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(expect_string(j, "rational"));
}

Json clopen_to_json(const ClopenSet& a) {
  Json j;
  j["antichain"] = a.antichain();
  return j;
}

ClopenSet clopen_from_json(const Json& j) {
  expect_object(j, "clopen set");
  return ClopenSet::canonical(word_list(expect_field(j, "antichain", "clopen set"), "antichain"));
}

Json interval_set_to_json(const IntervalSet& s) {
  Json intervals = Json::array();
  for (const auto& [lo, hi] : s.intervals()) {
    intervals.push_back(Json::array({rational_to_json(lo), rational_to_json(hi)}));
  }
  Json j;
  j["intervals"] = std::move(intervals);
  return j;
}

IntervalSet interval_set_from_json(const Json& j) {
  expect_object(j, "interval set");
  const Json& intervals = expect_field(j, "intervals", "interval set");
  if (!intervals.is_array()) throw InvalidInput("interval set: \"intervals\" must be an array");
  std::vector<IntervalSet::Interval> out;
  for (const Json& pair : intervals) {
    if (!pair.is_array() || pair.size() != 2) {
      throw InvalidInput("interval set: each interval must be a [lo, hi] pair");
    }
    out.emplace_back(rational_from_json(pair[0]), rational_from_json(pair[1]));
  }
  return IntervalSet::make(std::move(out));
}

Json transducer_to_json(const TransducerMap& f) {
  Json transitions = Json::array();
  for (std::size_t s = 0; s < f.state_count(); ++s) {
    for (int bit = 0; bit < 2; ++bit) {
      const TransducerMap::Arrow& a = f.arrow(static_cast<int>(s), bit);
      Json t;
      t["bit"] = bit;
      t["emit"] = a.emit;
      t["from"] = f.state_name(static_cast<int>(s));
      t["to"] = f.state_name(a.next);
      transitions.push_back(std::move(t));
    }
  }
  Json j;
  j["initial"] = f.state_name(f.initial());
  j["states"] = f.state_names();
  j["transitions"] = std::move(transitions);
  return j;
}

TransducerMap transducer_from_json(const Json& j) {
  expect_object(j, "transducer");
  std::vector<std::string> names =
      word_list(expect_field(j, "states", "transducer"), "transducer states");
  if (names.empty()) throw InvalidInput("transducer: empty state list");
  const std::string initial_name = expect_string(expect_field(j, "initial", "transducer"),
                                                 "transducer initial state");
  int initial = -1;
  for (std::size_t s = 0; s < names.size(); ++s) {
    if (names[s] == initial_name) initial = static_cast<int>(s);
    for (std::size_t t = s + 1; t < names.size(); ++t) {
      if (names[s] == names[t]) throw InvalidInput("transducer: duplicate state name");
    }
  }
  if (initial < 0) throw InvalidInput("transducer: initial state not in state list");

  std::vector<std::array<TransducerMap::Arrow, 2>> arrows(names.size());
  std::vector<std::array<bool, 2>> seen(names.size(), {false, false});
  const Json& transitions = expect_field(j, "transitions", "transducer");
  if (!transitions.is_array()) throw InvalidInput("transducer: \"transitions\" must be an array");
  for (const Json& t : transitions) {
    expect_object(t, "transition");
    const std::string from = expect_string(expect_field(t, "from", "transition"), "from state");
    const std::string to = expect_string(expect_field(t, "to", "transition"), "to state");
    const Json& bit_json = expect_field(t, "bit", "transition");
    if (!bit_json.is_number_integer()) throw InvalidInput("transition: \"bit\" must be 0 or 1");
    const long bit = bit_json.get<long>();
    if (bit != 0 && bit != 1) throw InvalidInput("transition: \"bit\" must be 0 or 1");
    int from_ix = -1, to_ix = -1;
    for (std::size_t s = 0; s < names.size(); ++s) {
      if (names[s] == from) from_ix = static_cast<int>(s);
      if (names[s] == to) to_ix = static_cast<int>(s);
    }
    if (from_ix < 0 || to_ix < 0) throw InvalidInput("transition: unknown state name");
    if (seen[static_cast<std::size_t>(from_ix)][bit]) {
      throw InvalidInput("transducer: duplicate transition for (" + from + ", " +
                         std::to_string(bit) + ")");
    }
    seen[static_cast<std::size_t>(from_ix)][bit] = true;
    TransducerMap::Arrow& a = arrows[static_cast<std::size_t>(from_ix)][bit];
    a.emit = expect_string(expect_field(t, "emit", "transition"), "emit word");
    a.next = to_ix;
  }
  for (std::size_t s = 0; s < names.size(); ++s) {
    for (int bit = 0; bit < 2; ++bit) {
      if (!seen[s][bit]) {
        throw InvalidInput("transducer: missing transition for (" + names[s] + ", " +
                           std::to_string(bit) + ")");
      }
    }
  }
  return TransducerMap::make(std::move(names), initial, std::move(arrows));
}

Json exchange_to_json(const PrefixExchange& p) {
  Json rules = Json::array();
  for (const auto& [u, v] : p.rules()) rules.push_back(Json::array({u, v}));
  Json j;
  j["rules"] = std::move(rules);
  return j;
}

PrefixExchange exchange_from_json(const Json& j) {
  expect_object(j, "prefix exchange");
  const Json& rules = expect_field(j, "rules", "prefix exchange");
  if (!rules.is_array()) throw InvalidInput("prefix exchange: \"rules\" must be an array");
  std::vector<std::pair<Word, Word>> out;
  for (const Json& rule : rules) {
    if (!rule.is_array() || rule.size() != 2) {
      throw InvalidInput("prefix exchange: each rule must be a [source, target] pair");
    }
    out.emplace_back(expect_string(rule[0], "rule source"), expect_string(rule[1], "rule target"));
  }
  return PrefixExchange::make(std::move(out));
}

Json measure_to_json(const CylinderMeasure& m) {
  Json j;
  switch (m.kind()) {
    case CylinderMeasure::Kind::Bernoulli:
      j["kind"] = "bernoulli";
      j["p"] = rational_to_json(m.param_p());
      if (m.total() != 1) j["total"] = rational_to_json(m.total());
      break;
    case CylinderMeasure::Kind::Markov: {
      j["kind"] = "markov";
      j["initial"] = Json::array(
          {rational_to_json(m.param_initial()[0]), rational_to_json(m.param_initial()[1])});
      Json rows = Json::array();
      for (int r = 0; r < 2; ++r) {
        rows.push_back(Json::array({rational_to_json(m.param_rows()[r][0]),
                                    rational_to_json(m.param_rows()[r][1])}));
      }
      j["rows"] = std::move(rows);
      if (m.total() != 1) j["total"] = rational_to_json(m.total());
      break;
    }
    case CylinderMeasure::Kind::Table: {
      j["kind"] = "table";
      j["depth"] = m.param_depth();
      j["tail"] = rational_to_json(m.param_p());
      Json weights;
      Word w(m.param_depth(), '0');
      for (std::size_t i = 0; i < m.param_weights().size(); ++i) {
        for (std::size_t b = 0; b < m.param_depth(); ++b) {
          w[b] = (i >> (m.param_depth() - 1 - b)) & 1 ? '1' : '0';
        }
        weights[w] = rational_to_json(m.param_weights()[i]);
      }
      j["weights"] = std::move(weights);
      break;
    }
  }
  return j;
}

CylinderMeasure measure_from_json(const Json& j) {
  expect_object(j, "measure");
  const std::string kind = expect_string(expect_field(j, "kind", "measure"), "measure kind");
  Rational total(1);
  if (const auto it = j.find("total"); it != j.end()) total = rational_from_json(*it);
  if (kind == "bernoulli") {
    return CylinderMeasure::bernoulli(rational_from_json(expect_field(j, "p", "measure")), total);
  }
  if (kind == "markov") {
    const Json& initial = expect_field(j, "initial", "measure");
    const Json& rows = expect_field(j, "rows", "measure");
    if (!initial.is_array() || initial.size() != 2 || !rows.is_array() || rows.size() != 2) {
      throw InvalidInput("markov measure: \"initial\" and \"rows\" must have two entries");
    }
    std::array<Rational, 2> init;
    std::array<std::array<Rational, 2>, 2> r;
    for (int b = 0; b < 2; ++b) {
      init[b] = rational_from_json(initial[b]);
      if (!rows[b].is_array() || rows[b].size() != 2) {
        throw InvalidInput("markov measure: each row must have two entries");
      }
      r[b][0] = rational_from_json(rows[b][0]);
      r[b][1] = rational_from_json(rows[b][1]);
    }
    return CylinderMeasure::markov(init, r, total);
  }
  if (kind == "table") {
    const std::size_t depth = expect_size(expect_field(j, "depth", "measure"), "table depth");
    const Json& weights = expect_field(j, "weights", "measure");
    expect_object(weights, "table weights");
    if (depth > 20) throw InvalidInput("table measure: depth too large");
    const std::size_t count = std::size_t{1} << depth;
    if (weights.size() != count) {
      throw InvalidInput("table measure: expected " + std::to_string(count) + " weights");
    }
    std::vector<Rational> masses;
    Word w(depth, '0');
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t b = 0; b < depth; ++b) {
        w[b] = (i >> (depth - 1 - b)) & 1 ? '1' : '0';
      }
      const auto it = weights.find(w);
      if (it == weights.end()) {
        throw InvalidInput("table measure: missing weight for \"" + w + "\"");
      }
      masses.push_back(rational_from_json(*it));
    }
    CylinderMeasure m = CylinderMeasure::table(
        depth, masses, rational_from_json(expect_field(j, "tail", "measure")));
    if (j.contains("total") && total != m.total()) {
      throw InvalidInput("table measure: \"total\" disagrees with the weight sum");
    }
    return m;
  }
  throw InvalidInput("measure: unknown kind \"" + kind + "\"");
}

Json load_json_arg(const std::string& arg) {
  std::string text = arg;
  const std::size_t first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw InvalidInput("cannot open file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace cantor
