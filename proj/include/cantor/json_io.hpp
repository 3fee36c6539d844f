// json_io.hpp -- JSON encoding of the core value types: rationals as "a/b"
// strings, everything else as small objects with alphabetically ordered keys
#pragma once

#include <json.hpp>

#include "cantor/clopen.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/measure.hpp"
#include "cantor/rational.hpp"
#include "cantor/transducer.hpp"

namespace cantor {

using Json = nlohmann::json;

// Decoders throw InvalidInput on structurally or semantically bad JSON (the
// value constructors do the semantic validation).

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json clopen_to_json(const ClopenSet& a);       // {"antichain": ["00","11"]}
ClopenSet clopen_from_json(const Json& j);

Json interval_set_to_json(const IntervalSet& s);  // {"intervals": [["0","1/3"],...]}
IntervalSet interval_set_from_json(const Json& j);

// {"initial":"s0","states":["s0",...],"transitions":[{"bit":0,"emit":"01",
// "from":"s0","to":"s1"},...]} with transitions listed per state in order.
Json transducer_to_json(const TransducerMap& f);
TransducerMap transducer_from_json(const Json& j);

Json exchange_to_json(const PrefixExchange& p);  // {"rules": [["00","00"],...]}
PrefixExchange exchange_from_json(const Json& j);

// {"kind":"bernoulli","p":"1/3"}, {"kind":"markov","initial":[...],"rows":
// [[...],[...]]}, or {"kind":"table","depth":2,"tail":"1/2","weights":
// {"00":"1/5",...}}; bernoulli/markov carry "total" only when it is not 1.
Json measure_to_json(const CylinderMeasure& m);
CylinderMeasure measure_from_json(const Json& j);

// Reads a command-line argument that is either inline JSON (first
// non-space character '{' or '[') or a path to a JSON file.
Json load_json_arg(const std::string& arg);

}  // namespace cantor
