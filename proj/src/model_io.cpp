#include "modp/model_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace modp {

namespace {

using Json = nlohmann::ordered_json;

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& member(const Json& object, const char* key, const std::string& where) {
  if (!object.is_object()) fail(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  return value.get<double>();
}

std::string string(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected a string");
  return value.get<std::string>();
}

const Json& array(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array");
  return value;
}

}  // namespace

Momdp load_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(line_context(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }

  const Json& version = member(doc, "version", "$");
  if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
    fail("$.version", "unsupported schema version (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  const Json& objectives_json = member(doc, "objectives", "$");
  if (!objectives_json.is_number_integer() || objectives_json.get<long long>() < 1) {
    fail("$.objectives", "expected a positive integer");
  }
  const auto objectives = objectives_json.get<std::size_t>();
  const double gamma = number(member(doc, "gamma", "$"), "$.gamma");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("$.gamma", "gamma out of (0,1]");

  bool continuing = false;
  if (auto it = doc.find("continuing"); it != doc.end()) {
    if (!it->is_boolean()) fail("$.continuing", "expected a boolean");
    continuing = it->get<bool>();
  }

  const Json& states_json = array(member(doc, "states", "$"), "$.states");
  std::unordered_map<std::string, StateIndex> index;
  for (std::size_t s = 0; s < states_json.size(); ++s) {
    const std::string where = "$.states[" + std::to_string(s) + "]";
    std::string id = string(member(states_json[s], "id", where), where + ".id");
    if (!index.emplace(id, s).second) fail(where + ".id", "duplicate state id '" + id + "'");
  }
  auto resolve = [&](const Json& value, const std::string& where) {
    std::string id = string(value, where);
    auto it = index.find(id);
    if (it == index.end()) fail(where, "unknown state '" + id + "'");
    return it->second;
  };

  std::vector<State> states(states_json.size());
  for (std::size_t s = 0; s < states_json.size(); ++s) {
    const std::string where = "$.states[" + std::to_string(s) + "]";
    states[s].id = states_json[s]["id"].get<std::string>();
    const Json& actions = array(member(states_json[s], "actions", where), where + ".actions");
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const std::string awhere = where + ".actions[" + std::to_string(a) + "]";
      Action action;
      action.name = string(member(actions[a], "name", awhere), awhere + ".name");
      const Json& transitions =
          array(member(actions[a], "transitions", awhere), awhere + ".transitions");
      for (std::size_t k = 0; k < transitions.size(); ++k) {
        const std::string twhere = awhere + ".transitions[" + std::to_string(k) + "]";
        Outcome o;
        o.successor = resolve(member(transitions[k], "to", twhere), twhere + ".to");
        o.probability = number(member(transitions[k], "p", twhere), twhere + ".p");
        const Json& r = array(member(transitions[k], "r", twhere), twhere + ".r");
        std::vector<double> reward;
        for (std::size_t i = 0; i < r.size(); ++i) {
          reward.push_back(number(r[i], twhere + ".r[" + std::to_string(i) + "]"));
        }
        try {
          o.reward = ValueVector(std::move(reward));
        } catch (const std::invalid_argument& e) {
          fail(twhere + ".r", e.what());
        }
        action.outcomes.push_back(std::move(o));
      }
      states[s].actions.push_back(std::move(action));
    }
  }

  const StateIndex start = resolve(member(doc, "start", "$"), "$.start");
  std::vector<StateIndex> terminals;
  const Json& terminals_json = array(member(doc, "terminals", "$"), "$.terminals");
  for (std::size_t t = 0; t < terminals_json.size(); ++t) {
    terminals.push_back(resolve(terminals_json[t], "$.terminals[" + std::to_string(t) + "]"));
  }
  return Momdp(std::move(states), objectives, gamma, start, std::move(terminals), continuing);
}

std::string save_model(const Momdp& m) {
  Json doc;
  doc["version"] = kModelFormatVersion;
  doc["objectives"] = m.objectives();
  doc["gamma"] = m.gamma();
  doc["start"] = m.state(m.start()).id;
  doc["terminals"] = Json::array();
  for (StateIndex t : m.terminals()) doc["terminals"].push_back(m.state(t).id);
  if (m.continuing()) doc["continuing"] = true;
  doc["states"] = Json::array();
  for (const auto& state : m.states()) {
    Json s;
    s["id"] = state.id;
    s["actions"] = Json::array();
    for (const auto& action : state.actions) {
      Json a;
      a["name"] = action.name;
      a["transitions"] = Json::array();
      for (const auto& o : action.outcomes) {
        Json t;
        t["to"] = m.state(o.successor).id;
        t["p"] = o.probability;
        t["r"] = std::vector<double>(o.reward.begin(), o.reward.end());
        a["transitions"].push_back(std::move(t));
      }
      s["actions"].push_back(std::move(a));
    }
    doc["states"].push_back(std::move(s));
  }
  return doc.dump(1) + "\n";
}

Momdp load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return load_model(text.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_model_file(const Momdp& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file " + path.string());
  out << save_model(m);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace modp
