#include "subexp/scenario.hpp"

#include <algorithm>

#include "json.hpp"

namespace subexp {

using Json = nlohmann::ordered_json;

namespace {

Rational parse_rational_field(const Json& j, const std::string& where) {
  if (j.is_number_integer())
    return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    if (auto q = parse_rational(j.get<std::string>())) return *q;
    fail_input("non-rational literal \"" + j.get<std::string>() + "\" in " + where);
  }
  fail_input("non-rational literal in " + where + " (use \"p/q\" strings or integers)");
}

std::string rational_field(const Rational& q) { return fraction_string(q); }

RandomVariable parse_variable(const Json& j, std::size_t atoms, const std::string& where) {
  if (!j.is_array() || j.size() != atoms)
    fail_input(where + " must list one value per atom (" + std::to_string(atoms) + ")");
  RandomVariable out;
  for (const auto& v : j) out.values.push_back(parse_rational_field(v, where));
  return out;
}

Rate parse_rate(const Json& j) {
  static const char* kSupported = "power, geometric, logpow, constant";
  if (!j.is_object() || !j.contains("family"))
    fail_input("rate needs a \"family\" (supported: " + std::string(kSupported) + ")");
  const std::string family = j.at("family").get<std::string>();
  Rate rate;
  if (family == "power")
    rate.family = RateFamily::Power;
  else if (family == "geometric")
    rate.family = RateFamily::Geometric;
  else if (family == "logpow")
    rate.family = RateFamily::LogPow;
  else if (family == "constant")
    rate.family = RateFamily::Constant;
  else
    fail_input("unknown rate family \"" + family + "\" (supported: " + kSupported + ")");
  if (!j.contains("param")) fail_input("rate family \"" + family + "\" needs \"param\"");
  rate.param = parse_rational_field(j.at("param"), "rate param");
  rate.alternating = j.value("alternating", false);
  rate.validate();
  return rate;
}

Mode parse_mode(const std::string& name) {
  if (name == "qs") return Mode::QS;
  if (name == "capacity") return Mode::Capacity;
  if (name == "lp") return Mode::Lp;
  if (name == "distribution") return Mode::Distribution;
  if (name == "complete") return Mode::Complete;
  if (name == "slr") return Mode::SLr;
  fail_input("unknown convergence mode \"" + name +
             "\" (supported: qs, capacity, lp, distribution, complete, slr)");
}

EventSet parse_event(const Json& j, const CredalModel& model, const std::string& where) {
  if (!j.is_array()) fail_input(where + " must be an array of atom labels");
  std::vector<std::size_t> members;
  for (const auto& label : j) {
    const std::string name = label.get<std::string>();
    const auto it =
        std::find(model.space.atoms.begin(), model.space.atoms.end(), name);
    if (it == model.space.atoms.end())
      fail_input(where + " references unknown atom \"" + name + "\"");
    members.push_back(static_cast<std::size_t>(it - model.space.atoms.begin()));
  }
  return EventSet{std::move(members)};
}

RealSet parse_realset(const Json& j) {
  if (!j.is_array()) fail_input("a real set is an array of interval objects");
  std::vector<Interval> parts;
  for (const auto& part : j) {
    Interval iv;
    if (part.contains("lo")) iv.lo = parse_rational_field(part.at("lo"), "interval lo");
    if (part.contains("hi")) iv.hi = parse_rational_field(part.at("hi"), "interval hi");
    iv.lo_closed = part.value("lo_closed", false);
    iv.hi_closed = part.value("hi_closed", false);
    iv.validate();
    parts.push_back(iv);
  }
  return RealSet(std::move(parts));
}

ContinuousFn parse_function(const Json& j) {
  ContinuousFn f;
  const std::string kind = j.value("kind", "identity");
  if (kind == "identity") {
    f.kind = ContinuousFn::Kind::Identity;
  } else if (kind == "affine") {
    f.kind = ContinuousFn::Kind::Affine;
    f.a = parse_rational_field(j.at("a"), "function a");
    f.b = parse_rational_field(j.at("b"), "function b");
  } else if (kind == "square") {
    f.kind = ContinuousFn::Kind::Square;
  } else if (kind == "abs") {
    f.kind = ContinuousFn::Kind::Abs;
  } else {
    fail_input("unknown function kind \"" + kind +
               "\" (supported: identity, affine, square, abs)");
  }
  return f;
}

void require_variable(const Scenario& s, const std::string& id, const std::string& where) {
  if (!s.variables.count(id))
    fail_input(where + " references unknown variable \"" + id + "\"");
}

void require_sequence(const Scenario& s, const std::string& id, const std::string& where) {
  if (!s.sequences.count(id))
    fail_input(where + " references unknown sequence \"" + id + "\"");
}

CheckSpec parse_check(const Json& j, const Scenario& scenario) {
  if (!j.is_object() || !j.contains("type")) fail_input("each check needs a \"type\"");
  CheckSpec check;
  check.type = j.at("type").get<std::string>();
  const std::string where = "check \"" + check.type + "\"";

  auto need_variable = [&] {
    check.variable = j.at("variable").get<std::string>();
    require_variable(scenario, check.variable, where);
  };
  auto need_sequence = [&] {
    check.sequence = j.at("sequence").get<std::string>();
    require_sequence(scenario, check.sequence, where);
  };

  if (check.type == "axioms") {
  } else if (check.type == "eval" || check.type == "lb-membership" ||
             check.type == "two-monotone" || check.type == "pair-properties") {
    need_variable();
    if (j.contains("p")) check.p = parse_rational_field(j.at("p"), where);
  } else if (check.type == "capacity") {
    check.event = parse_event(j.at("event"), scenario.model, where);
  } else if (check.type == "converge") {
    need_sequence();
    if (j.contains("modes")) {
      for (const auto& m : j.at("modes")) check.modes.push_back(parse_mode(m.get<std::string>()));
    } else {
      check.modes = {Mode::QS, Mode::Capacity, Mode::Lp, Mode::Distribution, Mode::Complete,
                     Mode::SLr};
    }
    if (j.contains("p")) check.p = parse_rational_field(j.at("p"), where);
    if (j.contains("r")) check.r = parse_rational_field(j.at("r"), where);
  } else if (check.type == "implication") {
    need_sequence();
    if (j.contains("p")) check.p = parse_rational_field(j.at("p"), where);
    if (j.contains("r")) check.r = parse_rational_field(j.at("r"), where);
  } else if (check.type == "subsequence" || check.type == "portmanteau" ||
             check.type == "df-convergence") {
    need_sequence();
  } else if (check.type == "continuous-mapping") {
    need_sequence();
    check.function = parse_function(j.value("function", Json::object()));
  } else if (check.type == "markov") {
    need_variable();
    check.lambda = parse_rational_field(j.at("lambda"), where);
    if (j.contains("p")) check.p = parse_rational_field(j.at("p"), where);
  } else if (check.type == "borel-cantelli") {
    EventSchedule schedule;
    if (j.contains("prefix"))
      for (const auto& e : j.at("prefix"))
        schedule.prefix.push_back(parse_event(e, scenario.model, where));
    if (j.contains("tail")) schedule.tail = parse_event(j.at("tail"), scenario.model, where);
    check.schedule = std::move(schedule);
  } else if (check.type == "certify-dct") {
    need_sequence();
    check.dominator = j.at("dominator").get<std::string>();
    require_variable(scenario, check.dominator, where);
    check.epsilon = parse_rational_field(j.at("epsilon"), where);
  } else if (check.type == "constant-limit") {
    need_sequence();
    check.constant = parse_rational_field(j.at("constant"), where);
  } else if (check.type == "uniform-integrability") {
    if (j.contains("sequence")) {
      need_sequence();
    } else {
      for (const auto& name : j.at("family")) {
        check.family.push_back(name.get<std::string>());
        require_variable(scenario, check.family.back(), where);
      }
    }
  } else if (check.type == "monotone-convergence") {
    need_sequence();
    check.limit = j.at("limit").get<std::string>();
    require_variable(scenario, check.limit, where);
  } else if (check.type == "distribution-capacity") {
    need_variable();
    check.set = parse_realset(j.at("set"));
  } else {
    fail_input("unknown check type \"" + check.type + "\"");
  }
  return check;
}

Json rate_to_json(const Rate& rate) {
  Json j;
  j["family"] = family_name(rate.family);
  j["param"] = rational_field(rate.param);
  if (rate.alternating) j["alternating"] = true;
  return j;
}

Json variable_to_json(const RandomVariable& x) {
  Json j = Json::array();
  for (const auto& v : x.values) j.push_back(rational_field(v));
  return j;
}

Json event_to_json(const EventSet& e, const CredalModel& model) {
  Json j = Json::array();
  for (auto i : e.members) j.push_back(model.space.atoms[i]);
  return j;
}

Json realset_to_json(const RealSet& s) {
  Json j = Json::array();
  for (const auto& p : s.parts()) {
    Json part = Json::object();
    if (p.lo) part["lo"] = rational_field(*p.lo);
    if (p.hi) part["hi"] = rational_field(*p.hi);
    if (p.lo_closed) part["lo_closed"] = true;
    if (p.hi_closed) part["hi_closed"] = true;
    j.push_back(part);
  }
  return j;
}

Json function_to_json(const ContinuousFn& f) {
  Json j;
  switch (f.kind) {
    case ContinuousFn::Kind::Identity: j["kind"] = "identity"; break;
    case ContinuousFn::Kind::Affine:
      j["kind"] = "affine";
      j["a"] = rational_field(f.a);
      j["b"] = rational_field(f.b);
      break;
    case ContinuousFn::Kind::Square: j["kind"] = "square"; break;
    case ContinuousFn::Kind::Abs: j["kind"] = "abs"; break;
    case ContinuousFn::Kind::PwLinear: j["kind"] = "pwlinear"; break;
  }
  return j;
}

}  // namespace

namespace {
Scenario parse_scenario_document(const Json& doc);
}

const RandomVariable& Scenario::variable(const std::string& id) const {
  const auto it = variables.find(id);
  if (it == variables.end()) fail_input("unknown variable \"" + id + "\"");
  return it->second;
}

const SequenceSpec& Scenario::sequence(const std::string& id) const {
  const auto it = sequences.find(id);
  if (it == sequences.end()) fail_input("unknown sequence \"" + id + "\"");
  return it->second;
}

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    fail_input(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail_input("scenario document must be a JSON object");
  try {
    return parse_scenario_document(doc);
  } catch (const Json::exception& e) {
    fail_input(std::string("malformed scenario: ") + e.what());
  }
}

namespace {

Scenario parse_scenario_document(const Json& doc) {
  Scenario scenario;
  scenario.name = doc.value("name", "");
  if (!doc.contains("space") || !doc.at("space").contains("atoms"))
    fail_input("scenario needs space.atoms");
  for (const auto& a : doc.at("space").at("atoms"))
    scenario.model.space.atoms.push_back(a.get<std::string>());
  scenario.model.space.validate();
  const std::size_t atoms = scenario.model.atom_count();

  if (!doc.contains("measures")) fail_input("scenario needs measures");
  std::size_t measure_index = 0;
  for (const auto& m : doc.at("measures")) {
    Measure measure;
    measure.name = m.value("name", "P" + std::to_string(measure_index));
    if (!m.contains("weights")) fail_input("measure \"" + measure.name + "\" needs weights");
    for (const auto& w : m.at("weights"))
      measure.weights.push_back(parse_rational_field(w, "measure \"" + measure.name + "\""));
    measure.validate(atoms);
    scenario.model.measures.push_back(std::move(measure));
    ++measure_index;
  }
  scenario.model.validate();

  if (doc.contains("variables")) {
    for (const auto& [name, values] : doc.at("variables").items()) {
      if (scenario.variables.count(name)) fail_input("duplicate variable \"" + name + "\"");
      scenario.variables[name] = parse_variable(values, atoms, "variable \"" + name + "\"");
    }
  }

  if (doc.contains("sequences")) {
    for (const auto& [name, body] : doc.at("sequences").items()) {
      if (scenario.sequences.count(name)) fail_input("duplicate sequence \"" + name + "\"");
      SequenceSpec seq;
      const std::string base = body.at("base").get<std::string>();
      require_variable(scenario, base, "sequence \"" + name + "\"");
      seq.base = scenario.variables.at(base);
      if (body.contains("terms")) {
        for (const auto& term : body.at("terms")) {
          SequenceTerm t;
          t.rate = parse_rate(term);
          const std::string dir = term.at("direction").get<std::string>();
          require_variable(scenario, dir, "sequence \"" + name + "\" term");
          t.direction = scenario.variables.at(dir);
          seq.terms.push_back(std::move(t));
        }
      }
      if (body.contains("prefix"))
        for (const auto& row : body.at("prefix"))
          seq.prefix.push_back(parse_variable(row, atoms, "sequence \"" + name + "\" prefix"));
      if (body.contains("declared_limit")) {
        const std::string lim = body.at("declared_limit").get<std::string>();
        require_variable(scenario, lim, "sequence \"" + name + "\" declared_limit");
        seq.declared_limit = scenario.variables.at(lim);
      }
      seq.tabulated_only = body.value("tabulated_only", false);
      seq.validate();
      scenario.sequences[name] = std::move(seq);
    }
  }

  if (doc.contains("checks"))
    for (const auto& c : doc.at("checks")) scenario.checks.push_back(parse_check(c, scenario));

  if (doc.contains("hooks") && doc.at("hooks").contains("doctor_offset"))
    scenario.doctor_offset =
        parse_rational_field(doc.at("hooks").at("doctor_offset"), "hooks.doctor_offset");

  return scenario;
}

}  // namespace

std::string serialize_scenario(const Scenario& scenario) {
  Json doc;
  if (!scenario.name.empty()) doc["name"] = scenario.name;
  doc["space"] = Json{{"atoms", scenario.model.space.atoms}};
  doc["measures"] = Json::array();
  for (const auto& m : scenario.model.measures) {
    Json measure;
    measure["name"] = m.name;
    Json weights = Json::array();
    for (const auto& w : m.weights) weights.push_back(rational_field(w));
    measure["weights"] = weights;
    doc["measures"].push_back(measure);
  }
  doc["variables"] = Json::object();
  for (const auto& [name, x] : scenario.variables) doc["variables"][name] = variable_to_json(x);

  doc["sequences"] = Json::object();
  for (const auto& [name, seq] : scenario.sequences) {
    Json body;
    // The base is stored inline under a reserved name when it does not match
    // a declared variable; the generator always uses declared variables.
    std::string base_name;
    for (const auto& [vn, vx] : scenario.variables)
      if (vx == seq.base) {
        base_name = vn;
        break;
      }
    if (base_name.empty()) fail_input("sequence base must be a declared variable");
    body["base"] = base_name;
    body["terms"] = Json::array();
    for (const auto& t : seq.terms) {
      Json term = rate_to_json(t.rate);
      std::string dir_name;
      for (const auto& [vn, vx] : scenario.variables)
        if (vx == t.direction) {
          dir_name = vn;
          break;
        }
      if (dir_name.empty()) fail_input("sequence direction must be a declared variable");
      term["direction"] = dir_name;
      body["terms"].push_back(term);
    }
    if (!seq.prefix.empty()) {
      body["prefix"] = Json::array();
      for (const auto& row : seq.prefix) body["prefix"].push_back(variable_to_json(row));
    }
    if (seq.declared_limit) {
      std::string lim_name;
      for (const auto& [vn, vx] : scenario.variables)
        if (vx == *seq.declared_limit) {
          lim_name = vn;
          break;
        }
      if (lim_name.empty()) fail_input("declared limit must be a declared variable");
      body["declared_limit"] = lim_name;
    }
    if (seq.tabulated_only) body["tabulated_only"] = true;
    doc["sequences"][name] = body;
  }

  doc["checks"] = Json::array();
  for (const auto& c : scenario.checks) {
    Json j;
    j["type"] = c.type;
    if (!c.variable.empty()) j["variable"] = c.variable;
    if (!c.sequence.empty()) j["sequence"] = c.sequence;
    if (!c.limit.empty()) j["limit"] = c.limit;
    if (!c.family.empty()) j["family"] = c.family;
    if (c.event) j["event"] = event_to_json(*c.event, scenario.model);
    if (c.schedule) {
      if (!c.schedule->prefix.empty()) {
        Json prefix = Json::array();
        for (const auto& e : c.schedule->prefix)
          prefix.push_back(event_to_json(e, scenario.model));
        j["prefix"] = prefix;
      }
      j["tail"] = event_to_json(c.schedule->tail, scenario.model);
    }
    if (!c.modes.empty()) {
      Json modes = Json::array();
      for (const auto& m : c.modes) modes.push_back(mode_name(m));
      j["modes"] = modes;
    }
    if (c.type == "converge" || c.type == "implication" || c.type == "markov" ||
        c.type == "eval" || c.type == "lb-membership")
      j["p"] = rational_field(c.p);
    if (c.type == "converge" || c.type == "implication") j["r"] = rational_field(c.r);
    if (c.lambda) j["lambda"] = rational_field(*c.lambda);
    if (c.epsilon) j["epsilon"] = rational_field(*c.epsilon);
    if (c.constant) j["constant"] = rational_field(*c.constant);
    if (!c.dominator.empty()) j["dominator"] = c.dominator;
    if (c.set) j["set"] = realset_to_json(*c.set);
    if (c.function) j["function"] = function_to_json(*c.function);
    doc["checks"].push_back(j);
  }

  if (scenario.doctor_offset)
    doc["hooks"] = Json{{"doctor_offset", rational_field(*scenario.doctor_offset)}};

  return doc.dump(2) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) {
  return serialize_scenario(a) == serialize_scenario(b);
}

}  // namespace subexp
